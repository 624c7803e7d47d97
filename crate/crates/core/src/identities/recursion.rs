//! Exact checkers for the G- and H-recursions.

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;

use super::{eval_g_raw, eval_h, GArgs};

/// The recursions of the G/H family. The G rules hold for all u >= 0 (with
/// G at u-1 = -1 the empty sum); the three H rules require u > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecursionRule {
    /// G(w+1,u,l;p0,p1,p2) = q^-2u G(w,u,l;p0,p2,p1+1) - q^(2p0+l) G(w,u-1,l;p0,p1,p2)
    GW1,
    /// G(w,u,l;p0,p1+1,p2) = G(w,u,l;p0,p1,p2) + q^(4p1+l+4) G(w,u-1,l;p0,p1,p2)
    GP1,
    /// G(w,u,l;p0,p1,p2+1) = G(w,u,l;p0,p1,p2) + q^(4p2+l+2) G(w,u-1,l;p0,p1,p2)
    GP2,
    /// G(w,u,l+1;p0,p1,p2) = q^u G(w,u,l;p0,p1,p2) - q^(u-2l) G(w+1,u,l;p0,p1,p2)
    GL1,
    /// G(w,u,l;p0,p1,p2) = q^4ku G(w+2k,u,l;p0-2k,p1-k,p2-k)
    GK,
    /// G(w+1,u,l;p0,p1,p2) = q^-2u G(w,u,l;p0+1,p2,p1+1)
    GOdd,
    /// H(u;p2,p1+1) = q^2u (H(u;p1,p2) + H(u-1;p1,p2)), u > 0
    HSwap,
    /// H(u;p1+1,p2) = H(u;p1,p2) + q^(4(p1+1)) H(u-1;p1,p2), u > 0
    HP1,
    /// H(u;p1,p2+1) = H(u;p1,p2) + q^(4p2+2) H(u-1;p1,p2), u > 0
    HP2,
    /// G00(w,u;p1,p2) = H(u;p1,p2) for every w
    G00ConstW,
}

impl RecursionRule {
    pub const ALL: [RecursionRule; 10] = [
        RecursionRule::GW1,
        RecursionRule::GP1,
        RecursionRule::GP2,
        RecursionRule::GL1,
        RecursionRule::GK,
        RecursionRule::GOdd,
        RecursionRule::HSwap,
        RecursionRule::HP1,
        RecursionRule::HP2,
        RecursionRule::G00ConstW,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RecursionRule::GW1 => "gw1",
            RecursionRule::GP1 => "gp1",
            RecursionRule::GP2 => "gp2",
            RecursionRule::GL1 => "gl1",
            RecursionRule::GK => "gk",
            RecursionRule::GOdd => "godd",
            RecursionRule::HSwap => "hswap",
            RecursionRule::HP1 => "hp1",
            RecursionRule::HP2 => "hp2",
            RecursionRule::G00ConstW => "g00constw",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.name() == name)
    }

    pub fn needs_k(&self) -> bool {
        matches!(self, RecursionRule::GK)
    }

    pub fn is_h_rule(&self) -> bool {
        matches!(self, RecursionRule::HSwap | RecursionRule::HP1 | RecursionRule::HP2)
    }
}

/// LHS - RHS of the cited recursion at the given sample point; exact zero
/// means pass, and a failure carries the nonzero difference as witness.
pub fn check_recursion(rule: RecursionRule, args: GArgs, k: Option<i64>) -> Result<Report> {
    if rule.is_h_rule() && args.u <= 0 {
        return Err(Error::InvalidArgument(format!(
            "rule {} requires u > 0, got u = {}",
            rule.name(),
            args.u
        )));
    }
    if rule.needs_k() && k.is_none() {
        return Err(Error::InvalidArgument("rule gk requires a shift k".into()));
    }
    let GArgs { w, u, ell, p0, p1, p2 } = args;
    let diff = match rule {
        RecursionRule::GW1 => eval_g_raw(w + 1, u, ell, p0, p1, p2)
            .sub_ref(&Scalar::q_pow(-2 * u).mul_ref(&eval_g_raw(w, u, ell, p0, p2, p1 + 1)))
            .add_ref(&Scalar::q_pow(2 * p0 + ell).mul_ref(&eval_g_raw(w, u - 1, ell, p0, p1, p2))),
        RecursionRule::GP1 => eval_g_raw(w, u, ell, p0, p1 + 1, p2)
            .sub_ref(&eval_g_raw(w, u, ell, p0, p1, p2))
            .sub_ref(&Scalar::q_pow(4 * p1 + ell + 4).mul_ref(&eval_g_raw(w, u - 1, ell, p0, p1, p2))),
        RecursionRule::GP2 => eval_g_raw(w, u, ell, p0, p1, p2 + 1)
            .sub_ref(&eval_g_raw(w, u, ell, p0, p1, p2))
            .sub_ref(&Scalar::q_pow(4 * p2 + ell + 2).mul_ref(&eval_g_raw(w, u - 1, ell, p0, p1, p2))),
        RecursionRule::GL1 => eval_g_raw(w, u, ell + 1, p0, p1, p2)
            .sub_ref(&Scalar::q_pow(u).mul_ref(&eval_g_raw(w, u, ell, p0, p1, p2)))
            .add_ref(&Scalar::q_pow(u - 2 * ell).mul_ref(&eval_g_raw(w + 1, u, ell, p0, p1, p2))),
        RecursionRule::GK => {
            let k = k.unwrap();
            eval_g_raw(w, u, ell, p0, p1, p2).sub_ref(
                &Scalar::q_pow(4 * k * u)
                    .mul_ref(&eval_g_raw(w + 2 * k, u, ell, p0 - 2 * k, p1 - k, p2 - k)),
            )
        }
        RecursionRule::GOdd => eval_g_raw(w + 1, u, ell, p0, p1, p2)
            .sub_ref(&Scalar::q_pow(-2 * u).mul_ref(&eval_g_raw(w, u, ell, p0 + 1, p2, p1 + 1))),
        RecursionRule::HSwap => eval_h(u, p2, p1 + 1).sub_ref(
            &Scalar::q_pow(2 * u).mul_ref(&eval_h(u, p1, p2).add_ref(&eval_h(u - 1, p1, p2))),
        ),
        RecursionRule::HP1 => eval_h(u, p1 + 1, p2)
            .sub_ref(&eval_h(u, p1, p2))
            .sub_ref(&Scalar::q_pow(4 * (p1 + 1)).mul_ref(&eval_h(u - 1, p1, p2))),
        RecursionRule::HP2 => eval_h(u, p1, p2 + 1)
            .sub_ref(&eval_h(u, p1, p2))
            .sub_ref(&Scalar::q_pow(4 * p2 + 2).mul_ref(&eval_h(u - 1, p1, p2))),
        RecursionRule::G00ConstW => eval_g_raw(w, u, 0, 0, p1, p2).sub_ref(&eval_h(u, p1, p2)),
    };
    let args_str = match k {
        Some(k) => format!("{args} k={k}"),
        None => args.to_string(),
    };
    Ok(Report::from_zero_check(
        format!("recursion:{}", rule.name()),
        args_str,
        diff.is_zero(),
        || diff.to_string(),
    ))
}
