//! Free noncommutative polynomials on declared letters with a commuting
//! torus part normalized to the right of every word.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// A letter of the free algebra. `K` letters are the formal iquantum-group
/// torus generators K_mu (with their inverses); they are free symbols, not
/// part of the normalized torus vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    B(usize),
    E(usize),
    F(usize),
    K { idx: usize, inv: bool },
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::B(i) => write!(f, "B{}", i + 1),
            Letter::E(i) => write!(f, "E{}", i + 1),
            Letter::F(i) => write!(f, "F{}", i + 1),
            Letter::K { idx, inv: false } => write!(f, "K[{}]", idx + 1),
            Letter::K { idx, inv: true } => write!(f, "K[{}]^-1", idx + 1),
        }
    }
}

/// A word times a torus monomial prod_i Kt_i^(t_i) kept on the right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeMonomial {
    pub word: Vec<Letter>,
    pub torus: Vec<i64>,
}

impl FreeMonomial {
    pub fn empty(rank: usize) -> Self {
        Self { word: Vec::new(), torus: vec![0; rank] }
    }

    pub fn letter(l: Letter, rank: usize) -> Self {
        Self { word: vec![l], torus: vec![0; rank] }
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty() && self.torus.iter().all(|&t| t == 0)
    }

    /// Number of occurrences of a given letter in the word.
    pub fn count(&self, l: Letter) -> usize {
        self.word.iter().filter(|&&x| x == l).count()
    }
}

impl fmt::Display for FreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for l in &self.word {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        for (i, &t) in self.torus.iter().enumerate() {
            if t != 0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "Kt{}^{}", i + 1, t)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Commutation context: how the torus generator Kt_i (= K_(h_i)^(eps_i))
/// passes a letter, as the exponent of q it picks up moving rightward.
#[derive(Clone, Debug)]
pub struct CommCtx {
    pub eps: Vec<i64>,
    pub a: Vec<Vec<i64>>,
}

impl CommCtx {
    /// Context with no torus generators (pure letter algebra).
    pub fn letters_only() -> Self {
        Self { eps: Vec::new(), a: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.eps.len()
    }

    /// q-exponent for Kt_i moving right past the letter: Kt_i X = q^e X Kt_i.
    fn pass_exponent(&self, i: usize, l: &Letter) -> i64 {
        match l {
            Letter::E(j) => self.eps[i] * self.a[i][*j],
            Letter::F(j) => -self.eps[i] * self.a[i][*j],
            Letter::K { .. } => 0,
            Letter::B(_) => {
                panic!("torus commutation past a B letter is undefined in the free algebra")
            }
        }
    }
}

/// A finite Scalar-combination of free monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreePoly {
    terms: BTreeMap<FreeMonomial, Scalar>,
}

impl FreePoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(FreeMonomial::empty(rank), Scalar::one())
    }

    pub fn letter(l: Letter, rank: usize) -> Self {
        Self::monomial(FreeMonomial::letter(l, rank), Scalar::one())
    }

    pub fn monomial(m: FreeMonomial, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FreeMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FreeMonomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Coefficient of a torus-free word.
    pub fn coeff_word(&self, word: &[Letter], rank: usize) -> Option<&Scalar> {
        self.terms.get(&FreeMonomial { word: word.to_vec(), torus: vec![0; rank] })
    }

    pub fn add_term(&mut self, m: FreeMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(c);
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
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), &c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))).collect(),
        }
    }

    /// Product, pushing torus parts to the right past the second word.
    pub fn mul(&self, other: &Self, ctx: &CommCtx) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in self.iter() {
            for (mb, cb) in other.iter() {
                let mut exp = 0i64;
                for (i, &t) in ma.torus.iter().enumerate() {
                    if t != 0 {
                        for l in &mb.word {
                            exp += t * ctx.pass_exponent(i, l);
                        }
                    }
                }
                let mut word = ma.word.clone();
                word.extend_from_slice(&mb.word);
                let torus: Vec<i64> = ma
                    .torus
                    .iter()
                    .zip(mb.torus.iter())
                    .map(|(x, y)| x + y)
                    .collect();
                let coeff = ca.mul_ref(cb).mul_ref(&Scalar::q_pow(exp));
                out.add_term(FreeMonomial { word, torus }, &coeff);
            }
        }
        out
    }

    pub fn pow(&self, n: usize, ctx: &CommCtx) -> Self {
        let rank = ctx.rank();
        let mut out = Self::one(rank);
        for _ in 0..n {
            out = out.mul(self, ctx);
        }
        out
    }

    /// The bar image: coefficients barred (with the declared image of the
    /// parameter symbol), torus exponents negated, K letters inverted,
    /// other letters fixed.
    pub fn bar(&self, sigma_image: &Scalar) -> crate::error::Result<Self> {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            let word = m
                .word
                .iter()
                .map(|l| match l {
                    Letter::K { idx, inv } => Letter::K { idx: *idx, inv: !inv },
                    other => *other,
                })
                .collect();
            let torus = m.torus.iter().map(|t| -t).collect();
            let coeff = c.bar().substitute_sigma(sigma_image)?;
            out.add_term(FreeMonomial { word, torus }, &coeff);
        }
        Ok(out)
    }

    /// Map every coefficient.
    pub fn map_coeffs(
        &self,
        f: impl Fn(&Scalar) -> crate::error::Result<Scalar>,
    ) -> crate::error::Result<Self> {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Degree in a given letter, maximized over monomials.
    pub fn degree_in(&self, l: Letter) -> usize {
        self.terms.keys().map(|m| m.count(l)).max().unwrap_or(0)
    }
}

impl fmt::Display for FreePoly {
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

/// Serialization view: word as letter strings, torus vector, coefficient in
/// canonical text.
#[derive(Serialize)]
pub struct TermView {
    pub word: Vec<String>,
    pub torus: Vec<i64>,
    pub coeff: String,
}

impl FreePoly {
    pub fn to_term_views(&self) -> Vec<TermView> {
        self.terms
            .iter()
            .map(|(m, c)| TermView {
                word: m.word.iter().map(|l| l.to_string()).collect(),
                torus: m.torus.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_passes_f_letters() {
        // Kt1 F1 = q1^-2 F1 Kt1 for A1: eps = [1], a = [[2]].
        let ctx = CommCtx { eps: vec![1], a: vec![vec![2]] };
        let kt = FreePoly::monomial(
            FreeMonomial { word: vec![], torus: vec![1] },
            Scalar::one(),
        );
        let f = FreePoly::letter(Letter::F(0), 1);
        let prod = kt.mul(&f, &ctx);
        let expected = FreePoly::monomial(
            FreeMonomial { word: vec![Letter::F(0)], torus: vec![1] },
            Scalar::q_pow(-2),
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn torus_normalization_is_associative() {
        let ctx = CommCtx { eps: vec![1, 2], a: vec![vec![2, -2], vec![-1, 2]] };
        let x = FreePoly::monomial(
            FreeMonomial { word: vec![Letter::F(0)], torus: vec![1, -1] },
            Scalar::q_pow(1),
        );
        let y = FreePoly::monomial(
            FreeMonomial { word: vec![Letter::E(1)], torus: vec![0, 2] },
            Scalar::one(),
        );
        let z = FreePoly::letter(Letter::F(1), 2);
        let left = x.mul(&y, &ctx).mul(&z, &ctx);
        let right = x.mul(&y.mul(&z, &ctx), &ctx);
        assert_eq!(left, right);
    }
}
