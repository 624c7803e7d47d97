//! Exact arithmetic in the fraction field of ZZ[q^±, L^±, s^±].
//!
//! `L` plays the role of q^lambda (one symbolic weight for the whole
//! computation) and `s` is the parameter symbol. Every `Scalar` is kept in
//! canonical form:
//!
//! - gcd(num, den) = 1, including integer content;
//! - den is a genuine polynomial (minimum exponent 0 in every variable)
//!   with positive leading coefficient in the fixed lexicographic order.
//!
//! Canonical form makes structural equality coincide with equality of
//! rational functions, and the `Display` output is the golden-file contract.

mod gcd;
mod laurent;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use laurent::{Exp, LaurentPoly, NVARS, VAR_NAMES};

pub const VAR_Q: usize = 0;
pub const VAR_L: usize = 1;
pub const VAR_S: usize = 2;

/// An element of the fraction field, always canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    /// The monomial c * q^eq * L^el * s^es.
    pub fn monomial(c: i64, eq: i64, el: i64, es: i64) -> Self {
        Self {
            num: LaurentPoly::monomial([eq, el, es], BigInt::from(c)),
            den: LaurentPoly::one(),
        }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e, 0, 0)
    }

    pub fn lambda_pow(e: i64) -> Self {
        Self::monomial(1, 0, e, 0)
    }

    pub fn sigma() -> Self {
        Self::monomial(1, 0, 0, 1)
    }

    /// Build `num / den` in canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        // Unit monomial denominators fold entirely into the numerator.
        if den.is_monomial() {
            let (exp, coeff) = den.leading().unwrap();
            let exp = *exp;
            let coeff = coeff.clone();
            let cn = num.int_content();
            let g = gcd::int_gcd(&cn, &coeff);
            let num = num.div_int_exact(&g).shifted([-exp[0], -exp[1], -exp[2]]);
            let mut rest = coeff / g;
            let mut num = num;
            if rest.is_negative() {
                num = num.neg();
                rest = -rest;
            }
            return Self { num, den: LaurentPoly::from_bigint(rest) };
        }
        if num.is_monomial() {
            let cn = num.int_content();
            let cd = den.int_content();
            let g = gcd::int_gcd(&cn, &cd);
            return Self::unit_normalize(num.div_int_exact(&g), den.div_int_exact(&g));
        }
        // Common case first: the denominator divides exactly.
        if let Some(q) = gcd::exact_div(&num, &den) {
            return Self { num: q, den: LaurentPoly::one() };
        }
        let g = gcd::gcd(&num, &den);
        if g.is_one() {
            return Self::unit_normalize(num, den);
        }
        let num = gcd::exact_div(&num, &g).expect("gcd divides numerator");
        let den = gcd::exact_div(&den, &g).expect("gcd divides denominator");
        Self::unit_normalize(num, den)
    }

    /// Pin the unit: den gets min exponent 0 in every variable and a positive
    /// leading coefficient; the inverse monomial lands in the numerator.
    fn unit_normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        let sd = den.min_exps();
        let den = den.shifted([-sd[0], -sd[1], -sd[2]]);
        let num = num.shifted([-sd[0], -sd[1], -sd[2]]);
        if den.leading_coeff_positive() {
            Self { num, den }
        } else {
            Self { num: num.neg(), den: den.neg() }
        }
    }

    /// Already-coprime parts that only need unit normalization.
    fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        Self::unit_normalize(num, den)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the canonical denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn uses_sigma(&self) -> bool {
        self.num.uses_var(VAR_S) || self.den.uses_var(VAR_S)
    }

    pub fn uses_lambda(&self) -> bool {
        self.num.uses_var(VAR_L) || self.den.uses_var(VAR_L)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = gcd::gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            return Self::from_coprime(num, den);
        }
        let da = gcd::exact_div(&self.den, &g).expect("gcd divides");
        let db = gcd::exact_div(&other.den, &g).expect("gcd divides");
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        Self::reduce(num, den)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cross-cancel so the final parts are coprime by construction.
        let g1 = gcd::gcd(&self.num, &other.den);
        let g2 = gcd::gcd(&other.num, &self.den);
        let na = if g1.is_one() { self.num.clone() } else { gcd::exact_div(&self.num, &g1).unwrap() };
        let db = if g1.is_one() { other.den.clone() } else { gcd::exact_div(&other.den, &g1).unwrap() };
        let nb = if g2.is_one() { other.num.clone() } else { gcd::exact_div(&other.num, &g2).unwrap() };
        let da = if g2.is_one() { self.den.clone() } else { gcd::exact_div(&self.den, &g2).unwrap() };
        Self::from_coprime(na.mul(&nb), da.mul(&db))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul_ref(&base);
        }
        Ok(out)
    }

    /// The bar involution: q -> q^-1, L -> L^-1, s fixed.
    pub fn bar(&self) -> Self {
        let map = |e: Exp| [-e[0], -e[1], e[2]];
        // An exponent-negating field automorphism preserves coprimality;
        // only the unit normalization has to be redone.
        Self::from_coprime(self.num.map_exponents(map), self.den.map_exponents(map))
    }

    /// Exact rational value at q = 1, L = 1 (s-free inputs only).
    pub fn specialize_q1(&self) -> Result<BigRational> {
        if self.uses_sigma() {
            return Err(Error::UnboundSymbol("s is present; bind it before specializing".into()));
        }
        let den = self.den.eval_q1();
        if den.is_zero() {
            return Err(Error::SpecializationPole(self.to_string()));
        }
        Ok(BigRational::new(self.num.eval_q1(), den))
    }

    /// Substitute L -> q^k (pin the symbolic weight to a concrete value).
    pub fn substitute_lambda(&self, k: i64) -> Self {
        let map = |e: Exp| [e[0] + k * e[1], 0, e[2]];
        Self::reduce(self.num.map_exponents(map), self.den.map_exponents(map))
    }

    /// Substitute q -> q^k for k >= 1 (base change to q_i).
    pub fn subst_q_power(&self, k: i64) -> Self {
        assert!(k >= 1, "base exponent must be positive");
        let map = |e: Exp| [k * e[0], e[1], e[2]];
        Self::reduce(self.num.map_exponents(map), self.den.map_exponents(map))
    }

    /// Substitute s -> `image` (a nonzero Scalar, since s^-1 may occur).
    pub fn substitute_sigma(&self, image: &Scalar) -> Result<Self> {
        let num = subst_sigma_poly(&self.num, image)?;
        let den = subst_sigma_poly(&self.den, image)?;
        num.div_ref(&den)
    }
}

fn subst_sigma_poly(p: &LaurentPoly, image: &Scalar) -> Result<Scalar> {
    let mut out = Scalar::zero();
    for (e_s, part) in p.by_var(VAR_S) {
        let factor = image.pow(e_s)?;
        out = out.add_ref(&Scalar::from_poly(part).mul_ref(&factor));
    }
    Ok(out)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_ref);
impl_binop!(Sub, sub, sub_ref);
impl_binop!(Mul, mul, mul_ref);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.div_ref(rhs).expect("division by zero Scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
