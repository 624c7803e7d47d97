//! Closed-form expansion of the idivided powers on an idempotent: the
//! double sums over E1^(a) F1^(...) monomials with q1^2-binomial
//! coefficients in the weight.

use crate::error::{Error, Result};
use crate::qcomb::{qbinom, QBase, UpperArg};
use crate::scalar::Scalar;

use super::{Engine, LambdaMode, NormalMonomial, Parity, StarWeight, StratumElement};

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

impl Engine {
    /// Materialize B_(1,parity)^((m)) 1*_base directly from the expansion
    /// formulas, without running the multiplication engine.
    pub fn expand_idp_closed(
        &self,
        m: u32,
        parity: Parity,
        base: StarWeight,
    ) -> Result<StratumElement> {
        if base.weight_parity() != parity {
            return Err(Error::ParityMismatch(format!(
                "B_(1,{parity}) on an incompatible idempotent {base}"
            )));
        }
        // Effective lambda: the weight is 2*lam_eff (even) or 2*lam_eff - 1
        // (odd). lam_eff = lam_sym + shift, where lam_sym is 1 (symbolic) or
        // 0 with the concrete value folded into the shift.
        let (lam_sym, shift) = match (self.lambda, parity) {
            (LambdaMode::Symbolic, Parity::Even) => (1i64, base.base() / 2),
            (LambdaMode::Symbolic, Parity::Odd) => (1i64, (base.base() + 1) / 2),
            (LambdaMode::Concrete(l0), Parity::Even) => (0i64, (2 * l0 + base.base()) / 2),
            (LambdaMode::Concrete(l0), Parity::Odd) => (0i64, (2 * l0 + base.base() + 1) / 2),
        };
        let eps = self.cartan.eps1;
        let q1sq = QBase::q_squared(eps);
        let mut out = StratumElement::zero();
        let m = i64::from(m);
        // Per case: c-range cap, the half-degree mm, the a-contribution to
        // the q1-exponent, the binomial-row shift of binom2, and the offset
        // of the upper argument mm + corr - c - a - lambda_eff.
        let (cap, mm, a_term, row, corr): (i64, i64, i64, i64, i64) = match (parity, m % 2) {
            // B_(1,ev)^((2mm)) 1*(2l)
            (Parity::Even, 0) => (m / 2, m / 2, 0, 1, 0),
            // B_(1,ev)^((2mm-1)) 1*(2l)
            (Parity::Even, _) => ((m + 1) / 2 - 1, (m + 1) / 2, -1, 1, -1),
            // B_(1,od)^((2mm)) 1*(2l-1)
            (Parity::Odd, 0) => (m / 2, m / 2, 1, 0, 0),
            // B_(1,od)^((2mm+1)) 1*(2l-1)
            (Parity::Odd, _) => ((m - 1) / 2, (m - 1) / 2, 2, 0, 1),
        };
        for c in 0..=cap {
            for a in 0..=(m - 2 * c) {
                let exp_const =
                    2 * (a + c) * (mm - a) - 2 * a * c + a_term * a - binom2(2 * c + row);
                let exp_lam = -2 * (a + c);
                // Fold lambda_eff = lam_sym * lambda + shift into the monomial.
                let coeff_mono = Scalar::monomial(
                    1,
                    eps * (exp_const + exp_lam * shift),
                    eps * exp_lam * lam_sym,
                    0,
                );
                let upper = UpperArg::new(-lam_sym, mm + corr - c - a - shift);
                let bin = qbinom(upper, c, q1sq);
                if bin.is_zero() {
                    continue;
                }
                let mono = NormalMonomial {
                    a: a as u32,
                    b: (m - 2 * c - a) as u32,
                    has_f2: false,
                    c: 0,
                    weight: base,
                };
                out.add_term(mono, &coeff_mono.mul_ref(&bin));
            }
        }
        Ok(out)
    }
}
