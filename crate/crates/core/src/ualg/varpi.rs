//! The involution that swaps E and F up to K-twists, checked on the
//! F2-free stratum at concrete weights.
//!
//! Generator images: E1 -> q1^-1 F1 K1~, F1 -> q1^-1 E1 K1~^-1, K fixed,
//! coefficients barred. Fixing every K_mu while inverting q forces the
//! idempotent weights to flip: 1*_m -> 1*_(-m). The fixed-point statement
//! for B1 and the idivided powers therefore reads
//!
//!   varpi(B_(1,p)^((n)) 1*_m) = B_(1,p)^((n)) 1*_(-m),
//!
//! which is the stratum form of the identity in the ambient algebra. It is
//! checked at pinned integer lambda, since the map inverts q and its action
//! on a formal weight symbol is not defined.

use crate::error::{Error, Result};
use crate::qcomb::qfact;
use crate::report::Report;
use crate::scalar::Scalar;

use super::{CartanData, Engine, LambdaMode, Parity, StarWeight, StratumElement};

impl Engine {
    /// The star weight denoting the negated integer weight, in the same
    /// concrete-lambda engine.
    pub fn flip_weight(&self, w: StarWeight) -> Result<StarWeight> {
        let LambdaMode::Concrete(l0) = self.lambda else {
            return Err(Error::InvalidArgument(
                "weight flip is defined at concrete lambda only".into(),
            ));
        };
        let m = 2 * l0 + w.base();
        let base = -m - 2 * l0;
        Ok(match w.parity {
            Parity::Even => StarWeight { parity: Parity::Even, offset: base },
            Parity::Odd => StarWeight { parity: Parity::Odd, offset: base + 1 },
        })
    }

    /// Apply the involution generator by generator to an F2-free element.
    /// Requires a concrete-lambda engine.
    pub fn apply_varpi(&self, x: &StratumElement) -> Result<StratumElement> {
        if !matches!(self.lambda, LambdaMode::Concrete(_)) {
            return Err(Error::InvalidArgument(
                "varpi acts at concrete lambda only".into(),
            ));
        }
        let q1 = crate::qcomb::QBase::q(self.cartan.eps1);
        let mut out = StratumElement::zero();
        for (m, coeff) in x.iter() {
            if m.has_f2 {
                return Err(Error::InvalidArgument("varpi check is F2-free".into()));
            }
            // E1^(a) F1^(b) = E1^a F1^b / ([a]! [b]!); the factorials are
            // bar-invariant.
            let mut acc = self.unit(self.flip_weight(m.weight)?);
            // Image of F1, applied b times (rightmost letters first):
            // q1^-1 E1 K1~^-1 scales by q1^(-1 - m_left) then acts by E1.
            for _ in 0..m.b {
                acc = self.scale_by_left_weight(&acc, -1, -1);
                acc = self.act_e1(1, &acc)?;
            }
            // Then the image of E1, a times: q1^-1 F1 K1~ scales by
            // q1^(m_left - 1) then acts by F1.
            for _ in 0..m.a {
                acc = self.scale_by_left_weight(&acc, 1, -1);
                acc = self.act_f1(1, &acc)?;
            }
            let fact = qfact(i64::from(m.a), q1)?.mul_ref(&qfact(i64::from(m.b), q1)?);
            let scaled = acc.scale(&coeff.bar().mul_ref(&fact.inv().expect("[n]! nonzero")));
            out = out.add(&scaled);
        }
        Ok(out)
    }

    /// Multiply every monomial by q1^(sign * m_left + extra).
    fn scale_by_left_weight(&self, x: &StratumElement, sign: i64, extra: i64) -> StratumElement {
        let mut out = StratumElement::zero();
        let eps = self.cartan.eps1;
        for (m, coeff) in x.iter() {
            let (lam, cst) = self.left_weight_parts(m);
            debug_assert_eq!(lam, 0, "concrete lambda expected");
            let factor = Scalar::monomial(1, eps * (sign * cst + extra), 0, 0);
            out.add_term(*m, &coeff.mul_ref(&factor));
        }
        out
    }
}

/// Fixed-point check: varpi carries B_(1,p)^((n)) 1*_m to
/// B_(1,p)^((n)) 1*_(-m) for n <= max_power at each concrete lambda in the
/// range (including n = 1, the generator B1, and n = 0, the idempotent
/// itself), and is an involution on all checked elements.
pub fn varpi_check_rank1(
    cartan: &CartanData,
    max_power: u32,
    lambda_range: std::ops::RangeInclusive<i64>,
) -> Result<Report> {
    let mut parts = Vec::new();
    for l0 in lambda_range {
        let engine = Engine::with_lambda(*cartan, LambdaMode::Concrete(l0));
        for (parity, weight) in [
            (Parity::Even, StarWeight::even(0)),
            (Parity::Odd, StarWeight::odd(0)),
        ] {
            let flipped = engine.flip_weight(weight)?;
            for n in 0..=max_power {
                let x = engine.idp_engine(n, parity, weight)?;
                let expected = engine.idp_engine(n, parity, flipped)?;
                let image = engine.apply_varpi(&x)?;
                parts.push(Report::from_zero_check(
                    "varpi:idp-fixed",
                    format!("lambda={l0} n={n} parity={parity}"),
                    image == expected,
                    || image.sub(&expected).to_string(),
                ));
                let twice = engine.apply_varpi(&image)?;
                parts.push(Report::from_zero_check(
                    "varpi:involution",
                    format!("lambda={l0} n={n} parity={parity}"),
                    twice == x,
                    || twice.sub(&x).to_string(),
                ));
            }
        }
    }
    Ok(Report::merge(
        "varpi-rank1",
        format!("max_power={max_power}"),
        &parts,
    ))
}
