//! The iSerre polynomial family in two free letters B1, B2: idivided-power
//! polynomials, the alternating sum, low-rank monomial conversions, parity
//! independence and the rescaling bookkeeping.

use crate::error::{Error, Result};
use crate::qcomb::{qbinom, qfact, qint, QBase};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::ualg::Parity;

use super::poly::{CommCtx, FreePoly, Letter};

pub const B1: Letter = Letter::B(0);
pub const B2: Letter = Letter::B(1);

fn ctx() -> CommCtx {
    CommCtx::letters_only()
}

/// q_i * sigma_i as a Scalar, with sigma either the formal symbol or a value.
fn q_sigma(sigma: &Scalar, base: QBase) -> Scalar {
    Scalar::q_pow(base.eps).mul_ref(sigma)
}

/// The idivided-power polynomial B_(1,parity)^((m)) in the single letter B1,
/// with general parameter sigma:
///
///   parity odd:  B prod_j (B^2 - q s [2j-1]^2) / [m]!    (j = 1..k)
///   parity even: B prod_j (B^2 - q s [2j]^2)   / [m]!    (m = 2k+1)
///                prod_j   (B^2 - q s [2j-2]^2) / [m]!    (m = 2k)
pub fn idp_poly(m: u32, parity: Parity, sigma: &Scalar, base: QBase) -> Result<FreePoly> {
    let c = ctx();
    let b = FreePoly::letter(B1, 0);
    let b2 = b.mul(&b, &c);
    let qs = q_sigma(sigma, base);
    let k = m / 2;
    let odd_power = m % 2 == 1;
    let mut acc = FreePoly::one(0);
    for j in 1..=k {
        let root = match (parity, odd_power) {
            (Parity::Odd, _) => 2 * i64::from(j) - 1,
            (Parity::Even, true) => 2 * i64::from(j),
            (Parity::Even, false) => 2 * i64::from(j) - 2,
        };
        let r = qint(root, base);
        let factor = b2.sub(&FreePoly::one(0).scale(&qs.mul_ref(&r).mul_ref(&r)));
        acc = acc.mul(&factor, &c);
    }
    if odd_power {
        acc = b.mul(&acc, &c);
    }
    let fact = qfact(i64::from(m), base)?;
    Ok(acc.scale(&fact.inv().expect("[m]! nonzero")))
}

/// S12(x, y) = sum_n (-1)^n [N; n] x^n y x^(N-n), N = 1 - a12, in base q1.
pub fn sij_poly(a12: i64, x: &FreePoly, y: &FreePoly, base: QBase, c: &CommCtx) -> FreePoly {
    let n_top = (1 - a12) as usize;
    let mut acc = FreePoly::zero();
    for n in 0..=n_top {
        let coeff = qbinom(n_top as i64, n as i64, base);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let term = x
            .pow(n, c)
            .mul(y, c)
            .mul(&x.pow(n_top - n, c), c)
            .scale(&coeff.mul_ref(&Scalar::from_int(sign)));
        acc = acc.add(&term);
    }
    acc
}

/// The iSerre sum sum_n (-1)^n B_(1, par(a12)+p)^((n)) B2 B_(1,p)^((1-a12-n))
/// as a free polynomial in B1, B2.
pub fn iserre_poly(a12: i64, p: Parity, sigma: &Scalar, base: QBase) -> Result<FreePoly> {
    if a12 > 0 {
        return Err(Error::InvalidArgument("a12 must be nonpositive".into()));
    }
    let c = ctx();
    let n_top = (1 - a12) as u32;
    let outer_parity = Parity::of(a12).add(p);
    let b2 = FreePoly::letter(B2, 0);
    let mut acc = FreePoly::zero();
    for n in 0..=n_top {
        let outer = idp_poly(n, outer_parity, sigma, base)?;
        let inner = idp_poly(n_top - n, p, sigma, base)?;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&outer.mul(&b2, &c).mul(&inner, &c).scale(&Scalar::from_int(sign)));
    }
    Ok(acc)
}

/// Rewrite the iSerre relation in plain monomials: returns the lower-order
/// side C of  S12(B1, B2) = C, i.e. C = S12 - [1-a12]! * iserre_poly,
/// as (word, coefficient) pairs in the fixed monomial order.
pub fn convert_to_monomial_form(
    a12: i64,
    sigma: &Scalar,
    base: QBase,
) -> Result<Vec<(Vec<Letter>, Scalar)>> {
    if !(-6..=0).contains(&a12) {
        return Err(Error::InvalidArgument(format!("a12 = {a12} outside [-6, 0]")));
    }
    let c = ctx();
    let b1 = FreePoly::letter(B1, 0);
    let b2 = FreePoly::letter(B2, 0);
    let s12 = sij_poly(a12, &b1, &b2, base, &c);
    let fact = qfact(1 - a12, base)?;
    let lower = s12.sub(&iserre_poly(a12, Parity::Even, sigma, base)?.scale(&fact));
    Ok(lower
        .iter()
        .map(|(m, coeff)| (m.word.clone(), coeff.clone()))
        .collect())
}

/// Corollary-style parity independence: the iSerre polynomial is the same
/// for both parities, as a polynomial in noncommuting B1, B2.
pub fn parity_independence_check(a12: i64, base: QBase) -> Result<Report> {
    let sigma = Scalar::sigma();
    let even = iserre_poly(a12, Parity::Even, &sigma, base)?;
    let odd = iserre_poly(a12, Parity::Odd, &sigma, base)?;
    let diff = even.sub(&odd);
    Ok(Report::from_zero_check(
        "parity-independence",
        format!("a12={a12}"),
        diff.is_zero(),
        || diff.to_string(),
    ))
}

/// Rescaling bookkeeping: starting from the distinguished parameters
/// (q1 s1 = 1), give every B1-degree-d term the factor (q s)^((D-d)/2)
/// (D the top degree); the result must be the generic-parameter iSerre
/// polynomial up to one global Scalar factor.
pub fn rescale_check(a12: i64, base: QBase) -> Result<Report> {
    let sigma = Scalar::sigma();
    let dist_sigma = Scalar::q_pow(-base.eps); // q1^-1
    let dist = iserre_poly(a12, Parity::Even, &dist_sigma, base)?;
    let generic = iserre_poly(a12, Parity::Even, &sigma, base)?;
    let top = (1 - a12) as usize; // B1-degree of the leading part
    let qs = q_sigma(&sigma, base);
    let mut rescaled = FreePoly::zero();
    for (m, coeff) in dist.iter() {
        let d = m.count(B1);
        let gap = top - d;
        if gap % 2 != 0 {
            return Ok(Report::fail(
                "rescale",
                format!("a12={a12}"),
                format!("odd degree gap at {m}"),
            ));
        }
        let factor = qs.pow((gap / 2) as i64).expect("nonnegative power");
        rescaled.add_term(m.clone(), &coeff.mul_ref(&factor));
    }
    // One global factor relates the two; read it off the first shared term.
    let Some((m0, c0)) = rescaled.iter().next() else {
        return Ok(Report::pass("rescale", format!("a12={a12}")));
    };
    let Some(g0) = generic.coeff(m0) else {
        return Ok(Report::fail(
            "rescale",
            format!("a12={a12}"),
            format!("monomial {m0} missing from the generic polynomial"),
        ));
    };
    let ratio = c0.div_ref(g0)?;
    let diff = rescaled.sub(&generic.scale(&ratio));
    Ok(Report::from_zero_check(
        "rescale",
        format!("a12={a12}"),
        diff.is_zero(),
        || format!("ratio={ratio} residual={diff}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::FreeMonomial;

    fn base() -> QBase {
        QBase::q(1)
    }

    fn word(b1s: &[usize]) -> Vec<Letter> {
        // b1s = [i, j] encodes B1^i B2 B1^j.
        let mut w = vec![B1; b1s[0]];
        w.push(B2);
        w.extend(std::iter::repeat(B1).take(b1s[1]));
        w
    }

    #[test]
    fn idp_poly_small_cases() {
        let s = Scalar::sigma();
        let p1 = idp_poly(1, Parity::Even, &s, base()).unwrap();
        assert_eq!(p1, FreePoly::letter(B1, 0));
        // (B^2 - q s [1]^2) / [2]!
        let p2 = idp_poly(2, Parity::Odd, &s, base()).unwrap();
        let inv2 = qfact(2, base()).unwrap().inv().unwrap();
        let mono_b2 = FreeMonomial { word: vec![B1, B1], torus: vec![] };
        assert_eq!(p2.coeff(&mono_b2).unwrap(), &inv2);
        assert_eq!(
            p2.coeff(&FreeMonomial::empty(0)).unwrap(),
            &Scalar::monomial(-1, 1, 0, 1).mul_ref(&inv2)
        );
        // B (B^2 - q s [2]^2) / [3]!
        let p3 = idp_poly(3, Parity::Even, &s, base()).unwrap();
        let inv6 = qfact(3, base()).unwrap().inv().unwrap();
        let mono_b3 = FreeMonomial { word: vec![B1, B1, B1], torus: vec![] };
        assert_eq!(p3.coeff(&mono_b3).unwrap(), &inv6);
        let two = qint(2, base());
        assert_eq!(
            p3.coeff(&FreeMonomial { word: vec![B1], torus: vec![] }).unwrap(),
            &Scalar::monomial(-1, 1, 0, 1).mul_ref(&two).mul_ref(&two).mul_ref(&inv6)
        );
    }

    #[test]
    fn iserre_poly_a12_zero_is_commutator() {
        let s = Scalar::sigma();
        for p in [Parity::Even, Parity::Odd] {
            let poly = iserre_poly(0, p, &s, base()).unwrap();
            // B2 B1 - B1 B2
            assert_eq!(poly.coeff_word(&[B2, B1], 0).unwrap(), &Scalar::one());
            assert_eq!(poly.coeff_word(&[B1, B2], 0).unwrap(), &Scalar::from_int(-1));
            assert_eq!(poly.num_terms(), 2);
        }
    }

    #[test]
    fn convert_a12_minus_one_matches_low_rank_table() {
        // S12 - [2]! * iserre = q s B2.
        let s = Scalar::sigma();
        let c = convert_to_monomial_form(-1, &s, base()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, word(&[0, 0]));
        assert_eq!(c[0].1, Scalar::monomial(1, 1, 0, 1));
    }

    #[test]
    fn parity_independence_small() {
        for a12 in [-3i64, -1, 0] {
            assert!(parity_independence_check(a12, base()).unwrap().pass);
        }
    }

    #[test]
    fn rescale_small() {
        for a12 in [-2i64, -1, 0] {
            let r = rescale_check(a12, base()).unwrap();
            assert!(r.pass, "a12={a12}: {:?}", r.witness);
        }
    }
}
