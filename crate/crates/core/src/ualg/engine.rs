//! Left-multiplication engine and the oriented q-Serre rewrite.

use crate::error::{Error, Result};
use crate::qcomb::{qbinom, qfact, QBase, UpperArg};
use crate::scalar::Scalar;

use super::{CartanData, NormalMonomial, Parity, StarWeight, StratumElement};

/// Whether the weight symbol lambda is kept formal (through L = q^lambda)
/// or pinned to a concrete integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaMode {
    Symbolic,
    Concrete(i64),
}

/// The computation context: Cartan data, lambda mode, degree cap.
#[derive(Clone, Debug)]
pub struct Engine {
    pub cartan: CartanData,
    pub lambda: LambdaMode,
    /// Hard cap on the total word degree of any monomial (divided-power units).
    pub degree_cap: u32,
}

impl Engine {
    pub fn new(cartan: CartanData) -> Self {
        Self { cartan, lambda: LambdaMode::Symbolic, degree_cap: 64 }
    }

    pub fn with_lambda(cartan: CartanData, lambda: LambdaMode) -> Self {
        Self { cartan, lambda, degree_cap: 64 }
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    fn q1(&self) -> QBase {
        QBase::q(self.cartan.eps1)
    }

    pub fn unit(&self, weight: StarWeight) -> StratumElement {
        StratumElement::monomial(NormalMonomial::unit(weight), Scalar::one())
    }

    /// The weight m = <h1, lambda> of the idempotent, as
    /// (coefficient of lambda, constant part).
    pub(super) fn weight_parts(&self, w: &StarWeight) -> (i64, i64) {
        match self.lambda {
            LambdaMode::Symbolic => (2, w.base()),
            LambdaMode::Concrete(l0) => (0, 2 * l0 + w.base()),
        }
    }

    /// Weight immediately left of the whole monomial.
    pub(super) fn left_weight_parts(&self, m: &NormalMonomial) -> (i64, i64) {
        let (lam, cst) = self.weight_parts(&m.weight);
        let delta = 2 * i64::from(m.a) - 2 * i64::from(m.b) - 2 * i64::from(m.c)
            - if m.has_f2 { self.cartan.a12 } else { 0 };
        (lam, cst + delta)
    }

    /// Parity of the weight on the left face of the element; None when the
    /// element is zero. Homogeneity makes it uniform across monomials.
    pub fn left_weight_parity(&self, x: &StratumElement) -> Option<Parity> {
        let mut result = None;
        for (m, _) in x.iter() {
            let p = match self.lambda {
                LambdaMode::Symbolic => {
                    Parity::of(m.weight.base() - if m.has_f2 { self.cartan.a12 } else { 0 })
                }
                LambdaMode::Concrete(_) => {
                    let (_, cst) = self.left_weight_parts(m);
                    Parity::of(cst)
                }
            };
            debug_assert!(result.is_none() || result == Some(p), "mixed left parity");
            result = Some(p);
        }
        result
    }

    fn check_cap(&self, degree: u32) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::DegreeCapExceeded(format!(
                "monomial degree {degree} exceeds cap {}",
                self.degree_cap
            )))
        } else {
            Ok(())
        }
    }

    /// Left multiplication by E1^(k).
    pub fn act_e1(&self, k: u32, x: &StratumElement) -> Result<StratumElement> {
        if k == 0 {
            return Ok(x.clone());
        }
        let mut out = StratumElement::zero();
        for (m, coeff) in x.iter() {
            self.check_cap(m.total_degree() + k)?;
            let merged = qbinom(i64::from(m.a + k), i64::from(k), self.q1());
            let mono = NormalMonomial { a: m.a + k, ..*m };
            debug_assert_eq!(mono.alpha1_net(), m.alpha1_net() + i64::from(k));
            out.add_term(mono, &coeff.mul_ref(&merged));
        }
        Ok(out)
    }

    /// Left multiplication by F1^(k), commuting past the E1 block.
    pub fn act_f1(&self, k: u32, x: &StratumElement) -> Result<StratumElement> {
        if k == 0 {
            return Ok(x.clone());
        }
        let mut out = StratumElement::zero();
        for (m, coeff) in x.iter() {
            self.check_cap(m.total_degree() + k)?;
            // Weight at the junction between the E1 block and the rest.
            let (lam, cst) = self.weight_parts(&m.weight);
            let d_ef = -2 * i64::from(m.b) - 2 * i64::from(m.c)
                - if m.has_f2 { self.cartan.a12 } else { 0 };
            for j in 0..=k.min(m.a) {
                // F1^(k) E1^(a) 1*_m = sum_j [k - a - m; j] E1^(a-j) F1^(k-j) 1*_m
                let upper = UpperArg::new(
                    -lam,
                    i64::from(k) - i64::from(m.a) - (cst + d_ef),
                );
                let comm = qbinom(upper, i64::from(j), self.q1());
                if comm.is_zero() {
                    continue;
                }
                let merge = qbinom(
                    i64::from(k - j) + i64::from(m.b),
                    i64::from(k - j),
                    self.q1(),
                );
                let mono = NormalMonomial {
                    a: m.a - j,
                    b: m.b + k - j,
                    ..*m
                };
                debug_assert_eq!(mono.alpha1_net(), m.alpha1_net() - i64::from(k));
                out.add_term(mono, &coeff.mul_ref(&comm).mul_ref(&merge));
            }
        }
        Ok(out)
    }

    /// Left multiplication by F2, with the q-Serre rewrite applied.
    pub fn act_f2(&self, x: &StratumElement) -> Result<StratumElement> {
        let raw = self.act_f2_unreduced(x)?;
        Ok(self.reduce_qserre(&raw))
    }

    /// Left multiplication by F2 without the q-Serre reduction: the right
    /// F1 exponent may exceed -a12. Used by the coefficient bridge.
    pub fn act_f2_unreduced(&self, x: &StratumElement) -> Result<StratumElement> {
        let mut out = StratumElement::zero();
        for (m, coeff) in x.iter() {
            if m.has_f2 {
                return Err(Error::InvalidArgument(
                    "second F2 leaves the single-F2 stratum".into(),
                ));
            }
            self.check_cap(m.total_degree() + 1)?;
            // F2 E1^(a) F1^(b) = E1^(a) F2 F1^(b): all F1 powers move to the
            // right slot, the left slot empties.
            let mono = NormalMonomial {
                a: m.a,
                b: 0,
                has_f2: true,
                c: m.b,
                weight: m.weight,
            };
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Oriented q-Serre rewrite: eliminate right exponents c >= 1 - a12 via
    ///
    ///   F2 F1^(c) = -[c; M]^-1 sum_(n=1)^(M) (-1)^n [c-n; M-n] F1^(n) F2 F1^(c-n),
    ///
    /// M = 1 - a12, iterated until every monomial satisfies c <= -a12.
    pub fn reduce_qserre(&self, x: &StratumElement) -> StratumElement {
        self.reduce_qserre_seeded(x, None)
    }

    /// Same rewrite with a seeded pick order over reducible monomials; any
    /// order must produce the same normal form (confluence).
    pub fn reduce_qserre_seeded(&self, x: &StratumElement, seed: Option<u64>) -> StratumElement {
        let m_cut = 1 - self.cartan.a12; // first reducible right exponent
        let mut done = StratumElement::zero();
        let mut work: Vec<(NormalMonomial, Scalar)> =
            x.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut state = seed.unwrap_or(0).wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        while let Some(idx) = {
            let reducible: Vec<usize> = work
                .iter()
                .enumerate()
                .filter(|(_, (m, _))| m.has_f2 && i64::from(m.c) >= m_cut)
                .map(|(i, _)| i)
                .collect();
            if reducible.is_empty() {
                None
            } else if seed.is_some() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                Some(reducible[(state as usize) % reducible.len()])
            } else {
                Some(reducible[0])
            }
        } {
            let (m, coeff) = work.swap_remove(idx);
            let c = i64::from(m.c);
            let lead = qbinom(c, m_cut, self.q1());
            let scale = coeff.mul_ref(&lead.inv().expect("[c; M] nonzero for c >= M"));
            for n in 1..=m_cut {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let inner = qbinom(c - n, m_cut - n, self.q1());
                if inner.is_zero() {
                    continue;
                }
                let merge = qbinom(i64::from(m.b) + n, n, self.q1());
                let term_coeff = scale
                    .mul_ref(&Scalar::from_int(-sign))
                    .mul_ref(&inner)
                    .mul_ref(&merge);
                let mono = NormalMonomial {
                    b: m.b + n as u32,
                    c: m.c - n as u32,
                    ..m
                };
                debug_assert_eq!(mono.alpha1_net(), m.alpha1_net());
                work.push((mono, term_coeff));
            }
        }
        for (m, c) in work {
            done.add_term(m, &c);
        }
        done
    }

    /// Left multiplication by B1 = F1 + q1^-1 E1 K1~^-1 (distinguished
    /// parameters), with the K-eigenvalue folded into the coefficients.
    pub fn act_b1(&self, x: &StratumElement) -> Result<StratumElement> {
        let mut out = self.act_f1(1, x)?;
        for (m, coeff) in x.iter() {
            let (lam, cst) = self.left_weight_parts(m);
            // q1^-1 * q1^(-m_left), m_left the weight on the left face.
            let e = self.cartan.eps1;
            let k_factor = Scalar::monomial(1, e * (-cst - 1), e * (-lam), 0);
            let single = StratumElement::monomial(*m, coeff.mul_ref(&k_factor));
            out = out.add(&self.act_e1(1, &single)?);
        }
        Ok(out)
    }

    /// Apply the idivided-power polynomial B_(1,parity)^((m)) to an element.
    ///
    /// With distinguished parameters q1*s1 = 1 the polynomial is
    ///   parity odd:  B prod (B^2 - [2j-1]^2) / [m]!   (m = 2k+1 or 2k)
    ///   parity even: B prod (B^2 - [2j]^2)   / [m]!   (m = 2k+1; [2j-2] for m = 2k)
    /// and the compatible operand parity is checked on the left face.
    pub fn apply_idp(&self, m: u32, parity: Parity, x: &StratumElement) -> Result<StratumElement> {
        if x.is_zero() {
            return Ok(StratumElement::zero());
        }
        if let Some(p) = self.left_weight_parity(x) {
            if p != parity {
                return Err(Error::ParityMismatch(format!(
                    "B_(1,{parity}) applied to a {p}-weight element"
                )));
            }
        }
        let k = m / 2;
        let odd_power = m % 2 == 1;
        let mut acc = x.clone();
        for j in 1..=k {
            let root = match (parity, odd_power) {
                (Parity::Odd, _) => 2 * i64::from(j) - 1,
                (Parity::Even, true) => 2 * i64::from(j),
                (Parity::Even, false) => 2 * i64::from(j) - 2,
            };
            let c = crate::qcomb::qint(root, self.q1());
            let c2 = c.mul_ref(&c);
            let b2 = self.act_b1(&self.act_b1(&acc)?)?;
            acc = b2.sub(&acc.scale(&c2));
        }
        if odd_power {
            acc = self.act_b1(&acc)?;
        }
        let fact = qfact(i64::from(m), self.q1())?;
        Ok(acc.scale(&fact.inv().expect("[m]! nonzero")))
    }

    /// B_(1,parity)^((m)) evaluated on the idempotent of `base`.
    pub fn idp_engine(
        &self,
        m: u32,
        parity: Parity,
        base: StarWeight,
    ) -> Result<StratumElement> {
        self.apply_idp(m, parity, &self.unit(base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::qint;

    fn engine(a12: i64) -> Engine {
        Engine::new(CartanData::for_a12(a12).unwrap())
    }

    #[test]
    fn act_f2_on_unit() {
        let e = engine(-2);
        let x = e.act_f2(&e.unit(StarWeight::even(0))).unwrap();
        assert_eq!(x.num_terms(), 1);
        let (m, c) = x.iter().next().unwrap();
        assert_eq!(
            *m,
            NormalMonomial { a: 0, b: 0, has_f2: true, c: 0, weight: StarWeight::even(0) }
        );
        assert!(c.is_one());
    }

    #[test]
    fn f1_past_e1_produces_weight_binomial() {
        // F1 E1 1*(2l) = E1 F1 1*(2l) + [-2l] 1*(2l)
        let e = engine(-1);
        let x = e.act_e1(1, &e.unit(StarWeight::even(0))).unwrap();
        let y = e.act_f1(1, &x).unwrap();
        assert_eq!(y.num_terms(), 2);
        let unit = NormalMonomial::unit(StarWeight::even(0));
        let coeff = y.coeff(&unit).unwrap();
        // [-2 lambda] = (L^-2 - L^2)/(q - q^-1)
        let expected = qint(UpperArg::new(-2, 0), QBase::q(1));
        assert_eq!(*coeff, expected);
    }

    #[test]
    fn divided_power_merge() {
        let e = engine(-1);
        let x = e.act_e1(1, &e.unit(StarWeight::even(0))).unwrap();
        let y = e.act_e1(1, &x).unwrap();
        let (m, c) = y.iter().next().unwrap();
        assert_eq!(m.a, 2);
        assert_eq!(*c, qbinom(2, 1, QBase::q(1)));
    }

    #[test]
    fn qserre_rewrite_at_a12_minus_one() {
        // M = 2: F2 F1^(2) -> F1^(1) F2 F1^(1) - F1^(2) F2.
        let e = engine(-1);
        let w = StarWeight::even(0);
        let x = StratumElement::monomial(
            NormalMonomial { a: 0, b: 0, has_f2: true, c: 2, weight: w },
            Scalar::one(),
        );
        let r = e.reduce_qserre(&x);
        let m1 = NormalMonomial { a: 0, b: 1, has_f2: true, c: 1, weight: w };
        let m2 = NormalMonomial { a: 0, b: 2, has_f2: true, c: 0, weight: w };
        assert_eq!(r.coeff(&m1).unwrap(), &Scalar::one());
        assert_eq!(r.coeff(&m2).unwrap(), &Scalar::from_int(-1));
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn qserre_sum_normalizes_to_zero() {
        // sum_n (-1)^n F1^(n) F2 F1^(M-n) is the q-Serre relation itself.
        for a12 in [-1i64, -2, -3] {
            let e = engine(a12);
            let w = StarWeight::even(0);
            let m_cut = (1 - a12) as u32;
            let mut x = StratumElement::zero();
            for n in 0..=m_cut {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                x.add_term(
                    NormalMonomial { a: 0, b: n, has_f2: true, c: m_cut - n, weight: w },
                    &Scalar::from_int(sign),
                );
            }
            assert!(e.reduce_qserre(&x).is_zero(), "a12 = {a12}");
        }
    }

    #[test]
    fn normal_input_unchanged() {
        let e = engine(-2);
        let w = StarWeight::even(0);
        let x = StratumElement::monomial(
            NormalMonomial { a: 1, b: 3, has_f2: true, c: 2, weight: w },
            Scalar::q_pow(5),
        );
        assert_eq!(e.reduce_qserre(&x), x);
    }

    #[test]
    fn act_b1_on_unit() {
        let e = engine(-2);
        let x = e.act_b1(&e.unit(StarWeight::even(0))).unwrap();
        let f = NormalMonomial { a: 0, b: 1, has_f2: false, c: 0, weight: StarWeight::even(0) };
        let ee = NormalMonomial { a: 1, b: 0, has_f2: false, c: 0, weight: StarWeight::even(0) };
        assert!(x.coeff(&f).unwrap().is_one());
        // q1^-1 L^-2eps1 with eps1 = 1
        assert_eq!(x.coeff(&ee).unwrap(), &Scalar::monomial(1, -1, -2, 0));
        assert!(e.act_b1(&StratumElement::zero()).unwrap().is_zero());
    }

    #[test]
    fn idp_engine_base_cases() {
        let e = engine(-2);
        assert_eq!(
            e.idp_engine(0, Parity::Even, StarWeight::even(0)).unwrap(),
            e.unit(StarWeight::even(0))
        );
        let b1 = e.idp_engine(1, Parity::Even, StarWeight::even(0)).unwrap();
        assert_eq!(b1, e.act_b1(&e.unit(StarWeight::even(0))).unwrap());
    }

    #[test]
    fn idp_parity_mismatch_rejected() {
        let e = engine(-2);
        assert!(matches!(
            e.idp_engine(2, Parity::Odd, StarWeight::even(0)),
            Err(Error::ParityMismatch(_))
        ));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let e = engine(-1).with_degree_cap(3);
        let unit = e.unit(StarWeight::even(0));
        let x = e.act_f1(3, &unit).unwrap();
        assert!(matches!(e.act_f1(1, &x), Err(Error::DegreeCapExceeded(_))));
    }
}
