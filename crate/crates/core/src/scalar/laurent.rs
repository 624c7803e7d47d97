//! Sparse Laurent polynomials in q, L, s over arbitrary-precision integers.
//!
//! `L` stands for the formal weight monomial q^lambda and `s` for the
//! parameter symbol. Terms are keyed by exponent vectors `(e_q, e_L, e_s)`
//! ordered lexicographically; that order is the serialization contract.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

/// Number of formal variables: q, L, s.
pub const NVARS: usize = 3;

/// Exponent vector `(e_q, e_L, e_s)`. The derived `Ord` is the fixed
/// lexicographic term order.
pub type Exp = [i64; NVARS];

pub const VAR_NAMES: [&str; NVARS] = ["q", "L", "s"];

/// An integer-coefficient Laurent polynomial with no stored zero terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial([0, 0, 0], BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exp: Exp, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0, 0, 0])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when the polynomial is a (possibly zero) integer constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    /// Leading term under the fixed lexicographic order.
    pub fn leading(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_positive(&self) -> bool {
        self.leading().map(|(_, c)| c.is_positive()).unwrap_or(true)
    }

    pub fn add_term(&mut self, exp: Exp, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(*e, &(-c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (ea, ca) in self.iter() {
            for (eb, cb) in other.iter() {
                let exp = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(exp, &(ca * cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, exp: Exp, coeff: &BigInt) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + exp[0], e[1] + exp[1], e[2] + exp[2]], c * coeff))
                .collect(),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        self.mul_monomial([0, 0, 0], k)
    }

    /// Shift all exponents by `delta` (multiplication by a unit monomial).
    pub fn shifted(&self, delta: Exp) -> Self {
        self.mul_monomial(delta, &BigInt::one())
    }

    /// Apply an exponent map term by term, merging collisions.
    pub fn map_exponents(&self, f: impl Fn(Exp) -> Exp) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.iter() {
            out.add_term(f(*e), c);
        }
        out
    }

    /// Per-variable minimum exponent; zero vector for the zero polynomial.
    pub fn min_exps(&self) -> Exp {
        let mut m = [i64::MAX; NVARS];
        for e in self.terms.keys() {
            for v in 0..NVARS {
                m[v] = m[v].min(e[v]);
            }
        }
        if self.terms.is_empty() {
            [0, 0, 0]
        } else {
            m
        }
    }

    pub fn max_exp_in(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_exp_in(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] != 0)
    }

    /// gcd of all integer coefficients, non-negative; zero for the zero poly.
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num::integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide all coefficients by `d`, which must divide exactly.
    pub fn div_int_exact(&self, d: &BigInt) -> Self {
        debug_assert!(!d.is_zero());
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % d).is_zero());
                    (*e, c / d)
                })
                .collect(),
        }
    }

    /// Exact value at q = 1, L = 1 for s-free polynomials: the coefficient sum.
    pub fn eval_q1(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Group terms by the exponent of variable `v`.
    pub fn by_var(&self, v: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in self.iter() {
            let mut rest = *e;
            rest[v] = 0;
            out.entry(e[v]).or_insert_with(LaurentPoly::zero).add_term(rest, c);
        }
        out
    }

    /// Reassemble from a `by_var` view.
    pub fn from_by_var(v: usize, parts: &BTreeMap<i64, LaurentPoly>) -> Self {
        let mut out = Self::zero();
        for (k, p) in parts {
            for (e, c) in p.iter() {
                let mut exp = *e;
                exp[v] += k;
                out.add_term(exp, c);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first; subsequent terms joined with explicit signs.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !abs.is_one() || *e == [0, 0, 0] {
                write!(f, "{}", abs)?;
                printed = true;
            }
            for v in 0..NVARS {
                if e[v] != 0 {
                    if printed {
                        write!(f, "*")?;
                    }
                    write!(f, "{}^{}", VAR_NAMES[v], e[v])?;
                    printed = true;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> LaurentPoly {
        LaurentPoly::monomial([e, 0, 0], BigInt::from(1))
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = q(3).add(&q(3).neg());
        assert!(p.is_zero());
    }

    #[test]
    fn display_is_deterministic() {
        let p = q(1).add(&q(-1)).add(&LaurentPoly::constant(-2));
        assert_eq!(p.to_string(), "q^1 - 2 + q^-1");
    }

    #[test]
    fn by_var_round_trip() {
        let p = LaurentPoly::monomial([2, -1, 0], BigInt::from(3)).add(&q(5));
        let view = p.by_var(1);
        assert_eq!(LaurentPoly::from_by_var(1, &view), p);
    }
}
