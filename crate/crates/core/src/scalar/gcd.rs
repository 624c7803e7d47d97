//! Exact division and multivariate gcd for the fraction-field reduction.
//!
//! The workhorse is a primitive pseudo-remainder sequence, recursing on the
//! number of variables. Inputs arriving here are ordinary polynomials
//! (min exponent 0 in every variable); the Laurent wrappers strip and restore
//! unit monomials around the core routines.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

use super::laurent::{Exp, LaurentPoly, NVARS};

/// Exact division of Laurent polynomials: returns `a / b` when `b` divides
/// `a` in ZZ[q^±, L^±, s^±], else `None`.
pub fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let sa = a.min_exps();
    let sb = b.min_exps();
    let an = a.shifted([-sa[0], -sa[1], -sa[2]]);
    let bn = b.shifted([-sb[0], -sb[1], -sb[2]]);
    let q = exact_div_poly(&an, &bn)?;
    Some(q.shifted([sa[0] - sb[0], sa[1] - sb[1], sa[2] - sb[2]]))
}

/// Exact division for normalized polynomials (all exponents >= 0).
fn exact_div_poly(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (lb_exp, lb_coeff) = b.leading().expect("nonzero divisor");
    let mut rem = a.clone();
    let mut quot = LaurentPoly::zero();
    while !rem.is_zero() {
        let (lr_exp, lr_coeff) = rem.leading().unwrap();
        let t: Exp = [
            lr_exp[0] - lb_exp[0],
            lr_exp[1] - lb_exp[1],
            lr_exp[2] - lb_exp[2],
        ];
        if t.iter().any(|&e| e < 0) {
            return None;
        }
        let (c, r) = num::integer::div_rem(lr_coeff.clone(), lb_coeff.clone());
        if !r.is_zero() {
            return None;
        }
        quot.add_term(t, &c);
        rem = rem.sub(&b.mul_monomial(t, &c));
    }
    Some(quot)
}

/// gcd in ZZ[q^±, L^±, s^±], normalized to a genuine polynomial with
/// positive leading coefficient. Unit monomial factors are not part of
/// the gcd (they are absorbed by the caller's normalization).
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return positive_normal(b);
    }
    if b.is_zero() {
        return positive_normal(a);
    }
    let sa = a.min_exps();
    let sb = b.min_exps();
    let an = a.shifted([-sa[0], -sa[1], -sa[2]]);
    let bn = b.shifted([-sb[0], -sb[1], -sb[2]]);
    positive_normal(&gcd_poly(&an, &bn))
}

fn positive_normal(p: &LaurentPoly) -> LaurentPoly {
    let sp = p.min_exps();
    let q = p.shifted([-sp[0], -sp[1], -sp[2]]);
    if q.leading_coeff_positive() {
        q
    } else {
        q.neg()
    }
}

/// gcd for normalized polynomials (exponents >= 0 in every variable).
fn gcd_poly(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        let g = num::integer::gcd(a.int_content(), b.int_content());
        return LaurentPoly::from_bigint(g);
    }
    // Main variable: prefer one where a side is free (content shortcut),
    // otherwise the smallest positive minimum degree.
    let mut var = None;
    let mut best = i64::MAX;
    for v in 0..NVARS {
        let da = a.max_exp_in(v);
        let db = b.max_exp_in(v);
        if da == 0 && db == 0 {
            continue;
        }
        if da == 0 || db == 0 {
            var = Some(v);
            best = 0;
            break;
        }
        let m = da.min(db);
        if m < best {
            best = m;
            var = Some(v);
        }
    }
    let _ = best;
    let v = var.expect("non-constant inputs have a live variable");
    if a.max_exp_in(v) == 0 {
        return gcd_poly(a, &content_in(b, v));
    }
    if b.max_exp_in(v) == 0 {
        return gcd_poly(&content_in(a, v), b);
    }

    let cont_a = content_in(a, v);
    let cont_b = content_in(b, v);
    let prim_a = exact_div_poly(a, &cont_a).expect("content divides");
    let prim_b = exact_div_poly(b, &cont_b).expect("content divides");
    let c = gcd_poly(&cont_a, &cont_b);

    // Subresultant pseudo-remainder sequence: the divisors lc(u) * h^delta
    // are exact and keep coefficient growth polynomial.
    let (mut u, mut v_poly) = if a.max_exp_in(v) >= b.max_exp_in(v) {
        (prim_a, prim_b)
    } else {
        (prim_b, prim_a)
    };
    let mut scale = LaurentPoly::one();
    let mut h = LaurentPoly::one();
    loop {
        let delta = u.max_exp_in(v) - v_poly.max_exp_in(v);
        let r = pseudo_rem(&u, &v_poly, v);
        if r.is_zero() {
            let pv = exact_div_poly(&v_poly, &content_in(&v_poly, v)).expect("content divides");
            return c.mul(&pv);
        }
        if r.max_exp_in(v) == 0 {
            // Primitive parts are coprime in v; only the content survives.
            return c;
        }
        u = v_poly;
        let divisor = {
            let mut d = scale.clone();
            for _ in 0..delta {
                d = d.mul(&h);
            }
            d
        };
        v_poly = exact_div_poly(&r, &divisor).expect("subresultant divisor divides");
        scale = leading_coeff_in(&u, v);
        h = match delta {
            0 => h,
            1 => scale.clone(),
            _ => {
                let mut num = LaurentPoly::one();
                for _ in 0..delta {
                    num = num.mul(&scale);
                }
                let mut den = LaurentPoly::one();
                for _ in 0..(delta - 1) {
                    den = den.mul(&h);
                }
                exact_div_poly(&num, &den).expect("subresultant h update divides")
            }
        };
    }
}

fn leading_coeff_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let d = p.max_exp_in(v);
    p.by_var(v).remove(&d).expect("nonzero polynomial")
}

/// Content of `p` with respect to variable `v`: gcd of its `v`-coefficients.
fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let view = p.by_var(v);
    let mut g = LaurentPoly::zero();
    for part in view.values() {
        g = gcd_poly(&g, part);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `f` by `g` in the main variable `v`, normalized to
/// exactly lc(g)^(deg f - deg g + 1) * f = q*g + r with deg_v r < deg_v g.
/// The fixed power is what makes the subresultant divisors exact.
fn pseudo_rem(f: &LaurentPoly, g: &LaurentPoly, v: usize) -> LaurentPoly {
    let dg = g.max_exp_in(v);
    let g_view = g.by_var(v);
    let lc_g = g_view.get(&dg).expect("leading coefficient").clone();
    let mut r = f.clone();
    let mut budget = f.max_exp_in(v) - dg + 1;
    while !r.is_zero() {
        let dr = r.max_exp_in(v);
        if dr < dg {
            break;
        }
        let r_view = r.by_var(v);
        let lc_r = r_view.get(&dr).expect("leading coefficient").clone();
        // r := lc_g * r - lc_r * x^(dr-dg) * g
        let mut shift = [0i64; NVARS];
        shift[v] = dr - dg;
        r = r.mul(&lc_g).sub(&lc_r.mul(&g.shifted(shift)));
        budget -= 1;
    }
    for _ in 0..budget {
        r = r.mul(&lc_g);
    }
    r
}

/// Integer gcd helper exposed for the fraction normalization.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let g = num::integer::gcd(a.clone(), b.clone());
    if g.is_zero() {
        BigInt::one()
    } else {
        g.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(Exp, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn exact_division_detects_failure() {
        let a = poly(&[([2, 0, 0], 1), ([0, 0, 0], -1)]); // q^2 - 1
        let b = poly(&[([1, 0, 0], 1), ([0, 0, 0], -1)]); // q - 1
        let q = exact_div(&a, &b).unwrap();
        assert_eq!(q, poly(&[([1, 0, 0], 1), ([0, 0, 0], 1)]));
        let c = poly(&[([1, 0, 0], 1), ([0, 0, 0], 1)]); // q + 1
        assert!(exact_div(&b, &c).is_none());
    }

    #[test]
    fn gcd_two_vars() {
        // (qL - 1)(q + 1) and (qL - 1)(q - 1) share qL - 1.
        let common = poly(&[([1, 1, 0], 1), ([0, 0, 0], -1)]);
        let a = common.mul(&poly(&[([1, 0, 0], 1), ([0, 0, 0], 1)]));
        let b = common.mul(&poly(&[([1, 0, 0], 1), ([0, 0, 0], -1)]));
        assert_eq!(gcd(&a, &b), common);
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = poly(&[([1, 0, 0], 6)]);
        let b = poly(&[([0, 0, 0], 4)]);
        assert_eq!(gcd(&a, &b), poly(&[([0, 0, 0], 2)]));
    }
}
