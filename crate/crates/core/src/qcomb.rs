//! Balanced q-integers, q-factorials and q-binomial coefficients.
//!
//! All of them come in base Q = q^eps (or q^(2 eps) for the squared
//! binomials), with
//!
//!   [n] = (Q^n - Q^-n) / (Q - Q^-1),   [m]! = [1][2]...[m],
//!   [n; d] = [n][n-1]...[n-d+1] / [d]!   (0 for d < 0).
//!
//! The upper argument may carry a symbolic part k*lambda + offset; the weight
//! symbol enters through L = q^lambda, so Q^(k*lambda + s) = L^(e*k) * q^(e*s).

use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Scalar};

use num::bigint::BigInt;
use num::traits::One;

/// Upper argument of a q-integer or q-binomial: `lambda_coeff * lambda + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UpperArg {
    pub lambda_coeff: i64,
    pub offset: i64,
}

impl UpperArg {
    pub fn new(lambda_coeff: i64, offset: i64) -> Self {
        Self { lambda_coeff, offset }
    }

    pub fn concrete(n: i64) -> Self {
        Self { lambda_coeff: 0, offset: n }
    }

    pub fn is_concrete(&self) -> bool {
        self.lambda_coeff == 0
    }

    fn shifted(&self, d: i64) -> Self {
        Self { lambda_coeff: self.lambda_coeff, offset: self.offset + d }
    }
}

impl From<i64> for UpperArg {
    fn from(n: i64) -> Self {
        Self::concrete(n)
    }
}

impl std::fmt::Display for UpperArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.lambda_coeff {
            0 => write!(f, "{}", self.offset),
            1 => write!(f, "l{:+}", self.offset),
            k => write!(f, "{}l{:+}", k, self.offset),
        }
    }
}

/// Base selector: q_i = q^eps, optionally squared (binomials in q_i^2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QBase {
    pub eps: i64,
    pub squared: bool,
}

impl QBase {
    pub fn q(eps: i64) -> Self {
        assert!(eps >= 1, "base exponent must be positive");
        Self { eps, squared: false }
    }

    pub fn q_squared(eps: i64) -> Self {
        assert!(eps >= 1, "base exponent must be positive");
        Self { eps, squared: true }
    }

    /// The effective exponent: Q = q^exponent().
    pub fn exponent(&self) -> i64 {
        self.eps * if self.squared { 2 } else { 1 }
    }
}

/// Q^n as a Scalar monomial, with L carrying the symbolic part.
pub fn base_power(n: UpperArg, base: QBase) -> Scalar {
    let e = base.exponent();
    Scalar::monomial(1, e * n.offset, e * n.lambda_coeff, 0)
}

fn base_power_poly(n: UpperArg, base: QBase) -> LaurentPoly {
    let e = base.exponent();
    LaurentPoly::monomial([e * n.offset, e * n.lambda_coeff, 0], BigInt::one())
}

fn qint_num(n: UpperArg, base: QBase) -> LaurentPoly {
    base_power_poly(n, base).sub(&base_power_poly(
        UpperArg::new(-n.lambda_coeff, -n.offset),
        base,
    ))
}

fn qint_den(base: QBase) -> LaurentPoly {
    qint_num(UpperArg::concrete(1), base)
}

/// The balanced q-integer [n] in the given base.
pub fn qint(n: impl Into<UpperArg>, base: QBase) -> Scalar {
    let n = n.into();
    Scalar::from_parts(qint_num(n, base), qint_den(base)).expect("nonzero denominator")
}

/// [m]! in the given base; negative m is rejected.
pub fn qfact(m: i64, base: QBase) -> Result<Scalar> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!("qfact of negative {m}")));
    }
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    let d1 = qint_den(base);
    for j in 1..=m {
        num = num.mul(&qint_num(UpperArg::concrete(j), base));
        den = den.mul(&d1);
    }
    Ok(Scalar::from_parts(num, den).expect("nonzero denominator"))
}

/// The q-binomial [n; d] in the given base; 0 for d < 0.
///
/// The division by [d]! is carried out in the fraction field. For a concrete
/// upper argument the result is a Laurent polynomial and the cancellation is
/// asserted as a self-test of the arithmetic. A symbolic upper argument
/// k*lambda + s stays rational: its canonical denominator is a q-only
/// product that clears under every integer specialization of lambda.
pub fn qbinom(n: impl Into<UpperArg>, d: i64, base: QBase) -> Scalar {
    let n = n.into();
    if d < 0 {
        return Scalar::zero();
    }
    if d == 0 {
        return Scalar::one();
    }
    // The d powers of (Q - Q^-1) cancel between prod [n-j] and [d]!, leaving
    // num = prod_j (Q^(n-j) - Q^(j-n)) over den = prod_j (Q^j - Q^-j).
    let mut num = LaurentPoly::one();
    for j in 0..d {
        num = num.mul(&qint_num(n.shifted(-j), base));
        if num.is_zero() {
            return Scalar::zero();
        }
    }
    let mut den = LaurentPoly::one();
    for j in 1..=d {
        den = den.mul(&qint_num(UpperArg::concrete(j), base));
    }
    let result = Scalar::from_parts(num, den).expect("nonzero denominator");
    assert!(
        !n.is_concrete() || result.is_polynomial(),
        "q-binomial failed to cancel: [{n}; {d}] -> {result}"
    );
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_examples() {
        assert_eq!(qint(2, QBase::q(1)).to_string(), "q^1 + q^-1");
        assert!(qint(0, QBase::q(1)).is_zero());
        for n in 1..=20 {
            assert_eq!(qint(-n, QBase::q(1)), qint(n, QBase::q(1)).neg_ref());
        }
    }

    #[test]
    fn qfact_examples() {
        assert!(qfact(0, QBase::q(1)).unwrap().is_one());
        assert_eq!(qfact(2, QBase::q(1)).unwrap().to_string(), "q^1 + q^-1");
        assert!(matches!(qfact(-1, QBase::q(1)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn qbinom_edges() {
        for n in -5..=5 {
            assert!(qbinom(n, 0, QBase::q(1)).is_one());
            assert!(qbinom(n, -2, QBase::q(1)).is_zero());
        }
        assert_eq!(qbinom(2, 1, QBase::q(1)).to_string(), "q^1 + q^-1");
        // [n; d] = 0 for 0 <= n < d.
        for n in 0..4 {
            for d in (n + 1)..6 {
                assert!(qbinom(n, d, QBase::q(1)).is_zero(), "[{n}; {d}]");
            }
        }
    }

    #[test]
    fn symbolic_upper_argument_specializes() {
        // [2*lambda + 1; 3] is rational in (q, L) with a q-only denominator,
        // and every integer pin of lambda clears it to the concrete binomial.
        let b = qbinom(UpperArg::new(2, 1), 3, QBase::q(1));
        assert!(!b.denominator().uses_var(crate::scalar::VAR_L));
        for l0 in -4..=4 {
            let pinned = b.substitute_lambda(l0);
            assert!(pinned.is_polynomial(), "lambda = {l0}");
            assert_eq!(pinned, qbinom(2 * l0 + 1, 3, QBase::q(1)));
        }
    }

    #[test]
    fn squared_base_doubles_exponent() {
        assert_eq!(qint(1, QBase::q_squared(1)), Scalar::one());
        assert_eq!(qint(2, QBase::q_squared(1)).to_string(), "q^2 + q^-2");
        assert_eq!(
            qbinom(3, 1, QBase::q_squared(2)),
            qbinom(3, 1, QBase::q(4))
        );
    }
}
