//! The T / G / H family of q-binomial sums, their recursions, and a
//! mechanical replay of the vanishing proof for G at ell >= 1.
//!
//! Everything here lives over plain q (base exponent 1); the symbolic weight
//! enters only in the engine modules. Arguments are concrete integers and
//! evaluation enumerates the defining sums directly.

mod recursion;
mod replay;

pub use recursion::{check_recursion, RecursionRule};
pub use replay::{replay_theorem_g, trace_is_consistent, DerivationTrace, TraceStep};

use crate::error::{Error, Result};
use crate::qcomb::{qbinom, QBase};
use crate::scalar::Scalar;

/// Arguments of T(w, u, ell); u and ell must not both vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TArgs {
    pub w: i64,
    pub u: i64,
    pub ell: i64,
}

impl TArgs {
    pub fn new(w: i64, u: i64, ell: i64) -> Result<Self> {
        if u < 0 || ell < 0 {
            return Err(Error::InvalidArgument(format!("u = {u}, ell = {ell} must be nonnegative")));
        }
        if u == 0 && ell == 0 {
            return Err(Error::InvalidArgument("u and ell must not both be 0".into()));
        }
        Ok(Self { w, u, ell })
    }
}

impl std::fmt::Display for TArgs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T({},{},{})", self.w, self.u, self.ell)
    }
}

/// Arguments of G(w, u, ell; p0, p1, p2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GArgs {
    pub w: i64,
    pub u: i64,
    pub ell: i64,
    pub p0: i64,
    pub p1: i64,
    pub p2: i64,
}

impl GArgs {
    pub fn new(w: i64, u: i64, ell: i64, p0: i64, p1: i64, p2: i64) -> Result<Self> {
        if u < 0 || ell < 0 {
            return Err(Error::InvalidArgument(format!("u = {u}, ell = {ell} must be nonnegative")));
        }
        Ok(Self { w, u, ell, p0, p1, p2 })
    }
}

impl std::fmt::Display for GArgs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G({},{},{};{},{},{})", self.w, self.u, self.ell, self.p0, self.p1, self.p2)
    }
}

fn base_q() -> QBase {
    QBase::q(1)
}

fn base_q2() -> QBase {
    QBase::q_squared(1)
}

/// Compositions c + e + r = u with all parts nonnegative.
fn compositions3(u: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    if u < 0 {
        return out;
    }
    for c in 0..=u {
        for e in 0..=(u - c) {
            out.push((c, e, u - c - e));
        }
    }
    out
}

fn is_even(n: i64) -> bool {
    n.rem_euclid(2) == 0
}

fn half(n: i64) -> i64 {
    debug_assert!(is_even(n));
    n / 2
}

/// One double-sum of T: the even-parity (2 | t+w-r) part when `even` is true,
/// the odd-parity part otherwise.
pub fn eval_t_sum(args: TArgs, even: bool) -> Scalar {
    let TArgs { w, u, ell } = args;
    let mut acc = Scalar::zero();
    for (c, e, r) in compositions3(u) {
        for t in 0..=ell {
            if is_even(t + w - r) != even {
                continue;
            }
            let term = if even {
                let exp = -t * (ell + u - 1) + (ell + u) * (c - e);
                let h = half(w + t - r);
                Scalar::q_pow(exp)
                    .mul_ref(&qbinom(ell, t, base_q()))
                    .mul_ref(&qbinom(w + t - ell, r, base_q()))
                    .mul_ref(&qbinom(u - 1 + h, c, base_q2()))
                    .mul_ref(&qbinom(h - ell, e, base_q2()))
            } else {
                let exp = -t * (ell + u - 1) + (ell + u - 1) * (c - e);
                let h = half(w + t - r - 1);
                Scalar::q_pow(exp)
                    .mul_ref(&qbinom(ell, t, base_q()))
                    .mul_ref(&qbinom(w + t - ell, r, base_q()))
                    .mul_ref(&qbinom(u + h, c, base_q2()))
                    .mul_ref(&qbinom(h - ell, e, base_q2()))
            };
            acc = acc.add_ref(&term);
        }
    }
    acc
}

/// T(w, u, ell): the difference of the two double sums.
pub fn eval_t(args: TArgs) -> Scalar {
    eval_t_sum(args, true).sub_ref(&eval_t_sum(args, false))
}

/// Test-only hook: T with the sign of the second double-sum flipped, so the
/// identity T = 0 is deliberately falsified for nontrivial arguments.
pub fn eval_t_mutated(args: TArgs) -> Scalar {
    eval_t_sum(args, true).add_ref(&eval_t_sum(args, false))
}

/// G with u < 0 treated as the empty sum (used by the recursion checkers).
pub(crate) fn eval_g_raw(w: i64, u: i64, ell: i64, p0: i64, p1: i64, p2: i64) -> Scalar {
    if u < 0 || ell < 0 {
        return Scalar::zero();
    }
    let mut even_part = Scalar::zero();
    let mut odd_part = Scalar::zero();
    for (c, e, r) in compositions3(u) {
        for t in 0..=ell {
            if is_even(t + w - r) {
                let exp = -t * (ell + u - 1) - u * (c + e) + 2 * c + r * p0 + 2 * c * p1 + 2 * e * p2;
                let h = half(w + t - r);
                let term = Scalar::q_pow(exp)
                    .mul_ref(&qbinom(ell, t, base_q()))
                    .mul_ref(&qbinom(w + t + p0, r, base_q()))
                    .mul_ref(&qbinom(h + p1, c, base_q2()))
                    .mul_ref(&qbinom(h + p2, e, base_q2()));
                even_part = even_part.add_ref(&term);
            } else {
                let exp = -t * (ell + u - 1) - (u - 1) * (c + e) + r * p0 + 2 * c * p1 + 2 * e * p2;
                let h = half(w + t - r - 1);
                let term = Scalar::q_pow(exp)
                    .mul_ref(&qbinom(ell, t, base_q()))
                    .mul_ref(&qbinom(w + t + p0, r, base_q()))
                    .mul_ref(&qbinom(1 + h + p1, c, base_q2()))
                    .mul_ref(&qbinom(h + p2, e, base_q2()));
                odd_part = odd_part.add_ref(&term);
            }
        }
    }
    let sign = if is_even(w) { 1 } else { -1 };
    Scalar::from_int(sign)
        .mul_ref(&Scalar::q_pow(u * u - w * u + ell * u))
        .mul_ref(&even_part.sub_ref(&odd_part))
}

/// G(w, u, ell; p0, p1, p2).
pub fn eval_g(args: GArgs) -> Scalar {
    eval_g_raw(args.w, args.u, args.ell, args.p0, args.p1, args.p2)
}

/// G0(w, u; p0, p1, p2) = G(w, u, 0; p0, p1, p2).
pub fn eval_g0(w: i64, u: i64, p0: i64, p1: i64, p2: i64) -> Scalar {
    eval_g_raw(w, u, 0, p0, p1, p2)
}

/// G00(w, u; p1, p2) = G(w, u, 0; 0, p1, p2).
pub fn eval_g00(w: i64, u: i64, p1: i64, p2: i64) -> Scalar {
    eval_g_raw(w, u, 0, 0, p1, p2)
}

/// H(u; p1, p2): the single sum over c + e = u.
pub fn eval_h(u: i64, p1: i64, p2: i64) -> Scalar {
    if u < 0 {
        return Scalar::zero();
    }
    let mut acc = Scalar::zero();
    for c in 0..=u {
        let e = u - c;
        let term = Scalar::q_pow(2 * c + 2 * c * p1 + 2 * e * p2)
            .mul_ref(&qbinom(p1, c, base_q2()))
            .mul_ref(&qbinom(p2, e, base_q2()));
        acc = acc.add_ref(&term);
    }
    acc
}

/// The closed form q^(2u + 2u p1) [p1; u]_(q^2) that H(u; p1, 0) collapses to.
pub fn h_p2_zero_closed_form(u: i64, p1: i64) -> Scalar {
    Scalar::q_pow(2 * u + 2 * u * p1).mul_ref(&qbinom(p1, u, base_q2()))
}

/// T expressed through G: T(w,u,ell) = (-1)^w q^(wu - u^2) G(w,u,ell; -ell, u-1, -ell).
pub fn t_via_g(w: i64, u: i64, ell: i64) -> Scalar {
    let sign = if is_even(w) { 1 } else { -1 };
    Scalar::from_int(sign)
        .mul_ref(&Scalar::q_pow(w * u - u * u))
        .mul_ref(&eval_g_raw(w, u, ell, -ell, u - 1, -ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targs_validation() {
        assert!(TArgs::new(0, 0, 0).is_err());
        assert!(TArgs::new(3, -1, 2).is_err());
        assert!(TArgs::new(0, 0, 1).is_ok());
    }

    #[test]
    fn t_vanishes_at_small_arguments() {
        assert!(eval_t(TArgs::new(0, 0, 1).unwrap()).is_zero());
        for w in -8..=8 {
            for u in 1..=6 {
                assert!(eval_t(TArgs::new(w, u, 0).unwrap()).is_zero(), "T({w},{u},0)");
            }
        }
    }

    #[test]
    fn mutated_t_is_nonzero() {
        assert!(!eval_t_mutated(TArgs::new(0, 1, 1).unwrap()).is_zero());
    }

    #[test]
    fn h_base_cases() {
        for p1 in -3..=3 {
            for p2 in -3..=3 {
                assert!(eval_h(0, p1, p2).is_one());
            }
        }
        assert_eq!(eval_h(1, 1, 0), Scalar::q_pow(4));
    }

    #[test]
    fn h_p2_zero_closed_form_matches() {
        for u in 0..=5 {
            for p1 in -3..=6 {
                assert_eq!(eval_h(u, p1, 0), h_p2_zero_closed_form(u, p1), "u={u} p1={p1}");
            }
        }
    }

    #[test]
    fn g_specializes_to_h() {
        for u in 0..=5 {
            for p1 in -3..=3 {
                for p2 in -3..=3 {
                    assert_eq!(
                        eval_g(GArgs::new(0, u, 0, 0, p1, p2).unwrap()),
                        eval_h(u, p1, p2)
                    );
                }
            }
        }
    }

    #[test]
    fn t_matches_g_substitution() {
        for w in -3..=3 {
            for u in 0..=3 {
                for ell in 0..=3 {
                    if u == 0 && ell == 0 {
                        continue;
                    }
                    assert_eq!(
                        eval_t(TArgs::new(w, u, ell).unwrap()),
                        t_via_g(w, u, ell),
                        "w={w} u={u} ell={ell}"
                    );
                }
            }
        }
    }
}
