//! Rank-2 modified-quantum-group engine on the single-F2 stratum.
//!
//! Elements are linear combinations of normal-form monomials
//!
//!   E1^(a) F1^(b) [F2] F1^(c) 1*_w,  with c <= -a12 when F2 is present,
//!
//! where the star weight `w` tracks <h1, lambda> either symbolically
//! (through L = q^lambda) or at a pinned integer lambda.

mod closed;
mod coeffs;
mod engine;
mod iserre;
mod varpi;

pub use coeffs::{bridge_prefactor, coefficient_bridge_check, extract_s, extract_s_part, SVariant};
pub use engine::{Engine, LambdaMode};
pub use iserre::{iserre_check, iserre_lhs_unreduced, SerreCase};
pub use varpi::varpi_check_rank1;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rank-2 symmetrizable Cartan data (diagonal entries implicitly 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanData {
    pub eps1: i64,
    pub eps2: i64,
    pub a12: i64,
    pub a21: i64,
}

impl CartanData {
    pub fn new(eps1: i64, eps2: i64, a12: i64, a21: i64) -> Result<Self> {
        if eps1 < 1 || eps2 < 1 {
            return Err(Error::InvalidParams("eps1, eps2 must be positive".into()));
        }
        if a12 > 0 || a21 > 0 {
            return Err(Error::InvalidParams("off-diagonal entries must be nonpositive".into()));
        }
        if (a12 == 0) != (a21 == 0) {
            return Err(Error::InvalidParams("a12 = 0 iff a21 = 0".into()));
        }
        if eps1 * a12 != eps2 * a21 {
            return Err(Error::InvalidParams(format!(
                "not symmetrizable: {eps1}*{a12} != {eps2}*{a21}"
            )));
        }
        Ok(Self { eps1, eps2, a12, a21 })
    }

    /// Minimal symmetrizable datum with the given a12 and eps1 = 1.
    pub fn for_a12(a12: i64) -> Result<Self> {
        if a12 == 0 {
            Self::new(1, 1, 0, 0)
        } else {
            Self::new(1, -a12, a12, -1)
        }
    }
}

/// Z2 parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "ev"),
            Parity::Odd => write!(f, "od"),
        }
    }
}

/// The idempotent 1*_(2 lambda + offset) (parity even) or
/// 1*_(2 lambda - 1 + offset) (parity odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarWeight {
    pub parity: Parity,
    pub offset: i64,
}

impl StarWeight {
    pub fn even(offset: i64) -> Self {
        Self { parity: Parity::Even, offset }
    }

    pub fn odd(offset: i64) -> Self {
        Self { parity: Parity::Odd, offset }
    }

    /// The constant part of the weight relative to 2 lambda.
    pub fn base(&self) -> i64 {
        match self.parity {
            Parity::Even => self.offset,
            Parity::Odd => self.offset - 1,
        }
    }

    /// Parity of the actual integer weight (2 lambda is even).
    pub fn weight_parity(&self) -> Parity {
        Parity::of(self.base())
    }
}

impl fmt::Display for StarWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.parity, self.offset) {
            (Parity::Even, 0) => write!(f, "1*(2l)"),
            (Parity::Even, k) => write!(f, "1*(2l{k:+})"),
            (Parity::Odd, 0) => write!(f, "1*(2l-1)"),
            (Parity::Odd, k) => write!(f, "1*(2l-1{k:+})"),
        }
    }
}

/// A normal-form monomial E1^(a) F1^(b) [F2] F1^(c) 1*_weight.
///
/// The derived order (a, b, has_f2, c, weight) is the serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalMonomial {
    pub a: u32,
    pub b: u32,
    pub has_f2: bool,
    pub c: u32,
    pub weight: StarWeight,
}

impl NormalMonomial {
    pub fn unit(weight: StarWeight) -> Self {
        Self { a: 0, b: 0, has_f2: false, c: 0, weight }
    }

    pub fn total_degree(&self) -> u32 {
        self.a + self.b + self.c + u32::from(self.has_f2)
    }

    /// Net alpha1 content (E1 count minus F1 count), conserved by rewrites.
    pub fn alpha1_net(&self) -> i64 {
        i64::from(self.a) - i64::from(self.b) - i64::from(self.c)
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if self.a > 0 {
            write!(f, "E1^({})", self.a)?;
            wrote = true;
        }
        if self.b > 0 {
            if wrote {
                write!(f, " ")?;
            }
            write!(f, "F1^({})", self.b)?;
            wrote = true;
        }
        if self.has_f2 {
            if wrote {
                write!(f, " ")?;
            }
            write!(f, "F2")?;
            wrote = true;
            if self.c > 0 {
                write!(f, " F1^({})", self.c)?;
            }
        }
        if wrote {
            write!(f, " ")?;
        }
        write!(f, "{}", self.weight)
    }
}

/// A finite linear combination of normal monomials with Scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StratumElement {
    terms: BTreeMap<NormalMonomial, Scalar>,
}

impl StratumElement {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn monomial(mono: NormalMonomial, coeff: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(mono, &coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &NormalMonomial) -> Option<&Scalar> {
        self.terms.get(mono)
    }

    pub fn add_term(&mut self, mono: NormalMonomial, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(*m, &c.neg_ref());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(s))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    /// All coefficients canonical with denominator 1 (integral form).
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial())
    }

    /// Every monomial shares the same star weight.
    pub fn uniform_weight(&self) -> Option<StarWeight> {
        let mut it = self.terms.keys();
        let w = it.next()?.weight;
        if it.all(|m| m.weight == w) {
            Some(w)
        } else {
            None
        }
    }

    /// Substitute L -> q^k coefficient-wise.
    pub fn substitute_lambda(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.substitute_lambda(k)))
                .collect(),
        }
    }
}

impl fmt::Display for StratumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {m}")?;
        }
        Ok(())
    }
}
