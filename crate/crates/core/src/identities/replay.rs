//! Proof replay for the vanishing of G at ell >= 1.
//!
//! The replay expands G(w,u,ell;p0,p1,p2) step by step: the ell-lowering
//! recursion brings every term down to a G0, the shift recursion (and, for
//! odd p0, the odd-shift) brings it to a G00, and the w-independence turns
//! every G00 into an H with w forgotten. All H leaves share one argument
//! tuple, so the final sum collapses; each intermediate combination is
//! re-evaluated directly and compared to the initial value.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{eval_g, eval_g_raw, eval_h, GArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    G(GArgs),
    H { u: i64, p1: i64, p2: i64 },
}

impl Node {
    fn eval(&self) -> Scalar {
        match self {
            Node::G(a) => eval_g(*a),
            Node::H { u, p1, p2 } => eval_h(*u, *p1, *p2),
        }
    }

    fn describe(&self) -> String {
        match self {
            Node::G(a) => a.to_string(),
            Node::H { u, p1, p2 } => format!("H({u};{p1},{p2})"),
        }
    }
}

/// One rewrite step: the cited rule, the term it was applied to, and the
/// value of the whole combination after the step.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: &'static str,
    pub args: String,
    pub value: Scalar,
    /// Whether the combination still evaluates to the initial value.
    pub check: bool,
}

/// A derivation trace for the vanishing of G.
#[derive(Clone, Debug)]
pub struct DerivationTrace {
    pub input: GArgs,
    pub initial: Scalar,
    pub steps: Vec<TraceStep>,
    pub final_value: Scalar,
    /// True when every intermediate matched the initial value and the trace
    /// terminated in the exact zero combination.
    pub sound: bool,
}

struct Replay {
    terms: Vec<(Scalar, Node)>,
    initial: Scalar,
    steps: Vec<TraceStep>,
    sound: bool,
}

impl Replay {
    /// Merge duplicate G nodes; H leaves stay separate so the final step
    /// exhibits the cancelling difference.
    fn combine_g(&mut self) {
        let mut merged: Vec<(Scalar, Node)> = Vec::new();
        for (coeff, node) in self.terms.drain(..) {
            let mergeable = matches!(node, Node::G(_));
            if mergeable {
                if let Some(slot) = merged.iter_mut().find(|(_, n)| *n == node) {
                    slot.0 = slot.0.add_ref(&coeff);
                    continue;
                }
            }
            merged.push((coeff, node));
        }
        merged.retain(|(c, _)| !c.is_zero());
        self.terms = merged;
    }

    fn value(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (coeff, node) in &self.terms {
            acc = acc.add_ref(&coeff.mul_ref(&node.eval()));
        }
        acc
    }

    fn record(&mut self, rule: &'static str, args: String) {
        let value = self.value();
        let check = value == self.initial;
        self.sound &= check;
        self.steps.push(TraceStep { rule, args, value, check });
    }

    /// Replace terms.idx by the given expansion and record the step.
    fn rewrite(&mut self, idx: usize, rule: &'static str, expansion: Vec<(Scalar, Node)>) {
        let (coeff, node) = self.terms.remove(idx);
        let args = node.describe();
        for (c, n) in expansion {
            self.terms.push((coeff.mul_ref(&c), n));
        }
        self.combine_g();
        self.record(rule, args);
    }
}

/// Replay the vanishing proof for G(w,u,ell;p0,p1,p2) with ell >= 1.
pub fn replay_theorem_g(input: GArgs) -> Result<DerivationTrace> {
    if input.ell < 1 {
        return Err(Error::InvalidArgument(format!("replay requires ell >= 1, got {}", input.ell)));
    }
    let initial = eval_g(input);
    let mut replay = Replay {
        terms: vec![(Scalar::one(), Node::G(input))],
        initial: initial.clone(),
        steps: Vec::new(),
        sound: true,
    };

    // Phase 1: lower ell all the way to 0 via
    // G(w,u,l+1) = q^u G(w,u,l) - q^(u-2l) G(w+1,u,l).
    loop {
        let Some(idx) = replay.terms.iter().position(|(_, n)| matches!(n, Node::G(a) if a.ell > 0))
        else {
            break;
        };
        let Node::G(a) = replay.terms[idx].1 else { unreachable!() };
        let l = a.ell - 1;
        let expansion = vec![
            (Scalar::q_pow(a.u), Node::G(GArgs { ell: l, ..a })),
            (
                Scalar::q_pow(a.u - 2 * l).neg_ref(),
                Node::G(GArgs { w: a.w + 1, ell: l, ..a }),
            ),
        ];
        replay.rewrite(idx, "gl1", expansion);
    }

    // Phase 2: normalize p0 away. Even p0 shifts directly to a G00; odd p0
    // first shifts to p0 = 1, then trades the leftover through the odd-shift:
    // G(w,u,l;1,A,B) = q^2u G(w+1,u,l;0,B-1,A).
    loop {
        let Some(idx) = replay
            .terms
            .iter()
            .position(|(_, n)| matches!(n, Node::G(a) if a.p0 != 0))
        else {
            break;
        };
        let Node::G(a) = replay.terms[idx].1 else { unreachable!() };
        if a.p0 % 2 == 0 {
            let k = a.p0 / 2;
            let expansion = vec![(
                Scalar::q_pow(4 * k * a.u),
                Node::G(GArgs {
                    w: a.w + 2 * k,
                    p0: 0,
                    p1: a.p1 - k,
                    p2: a.p2 - k,
                    ..a
                }),
            )];
            replay.rewrite(idx, "gk", expansion);
        } else if a.p0 != 1 {
            let k = (a.p0 - 1) / 2;
            let expansion = vec![(
                Scalar::q_pow(4 * k * a.u),
                Node::G(GArgs {
                    w: a.w + 2 * k,
                    p0: 1,
                    p1: a.p1 - k,
                    p2: a.p2 - k,
                    ..a
                }),
            )];
            replay.rewrite(idx, "gk", expansion);
        } else {
            let expansion = vec![(
                Scalar::q_pow(2 * a.u),
                Node::G(GArgs {
                    w: a.w + 1,
                    p0: 0,
                    p1: a.p2 - 1,
                    p2: a.p1,
                    ..a
                }),
            )];
            replay.rewrite(idx, "godd", expansion);
        }
    }

    // Phase 3: every remaining G is a G00; forget w (Prop. G00 = H).
    loop {
        let Some(idx) = replay.terms.iter().position(|(_, n)| matches!(n, Node::G(_))) else {
            break;
        };
        let Node::G(a) = replay.terms[idx].1 else { unreachable!() };
        debug_assert!(a.ell == 0 && a.p0 == 0);
        let expansion = vec![(Scalar::one(), Node::H { u: a.u, p1: a.p1, p2: a.p2 })];
        replay.rewrite(idx, "g00constw", expansion);
    }

    // Final step: the H leaves cancel.
    let summary = replay
        .terms
        .iter()
        .map(|(c, n)| format!("({c}) {}", n.describe()))
        .collect::<Vec<_>>()
        .join(" + ");
    // Full merge, H nodes included: the combination must collapse exactly.
    let mut merged: Vec<(Scalar, Node)> = Vec::new();
    for (coeff, node) in replay.terms.drain(..) {
        if let Some(slot) = merged.iter_mut().find(|(_, n)| *n == node) {
            slot.0 = slot.0.add_ref(&coeff);
        } else {
            merged.push((coeff, node));
        }
    }
    merged.retain(|(c, _)| !c.is_zero());
    replay.terms = merged;
    let final_value = replay.value();
    let check = final_value.is_zero() && final_value == initial;
    replay.sound &= check;
    replay.steps.push(TraceStep {
        rule: "sum",
        args: if summary.is_empty() { "0".into() } else { summary },
        value: final_value.clone(),
        check,
    });

    Ok(DerivationTrace {
        input,
        initial,
        steps: replay.steps,
        final_value,
        sound: replay.sound,
    })
}

/// Direct-evaluation cross-check used by callers: the trace is sound and its
/// final value coincides with eval_G of the input.
pub fn trace_is_consistent(trace: &DerivationTrace) -> bool {
    trace.sound
        && trace.final_value == eval_g_raw(
            trace.input.w,
            trace.input.u,
            trace.input.ell,
            trace.input.p0,
            trace.input.p1,
            trace.input.p2,
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_case_even_p0_is_four_steps() {
        let trace = replay_theorem_g(GArgs::new(0, 1, 1, 0, 0, 0).unwrap()).unwrap();
        assert!(trace.sound);
        assert!(trace.final_value.is_zero());
        // gl1 split, two g00constw conversions, final cancellation.
        assert_eq!(trace.steps.len(), 4);
        assert_eq!(trace.steps[0].rule, "gl1");
        assert_eq!(trace.steps.last().unwrap().rule, "sum");
        assert!(trace.steps.last().unwrap().args.contains("H(1;0,0)"));
    }

    #[test]
    fn replay_case_odd_p0() {
        let trace = replay_theorem_g(GArgs::new(0, 1, 1, 1, 0, 0).unwrap()).unwrap();
        assert!(trace.sound);
        assert!(trace.steps.iter().any(|s| s.rule == "godd"));
    }

    #[test]
    fn replay_matches_direct_evaluation() {
        let trace = replay_theorem_g(GArgs::new(2, 3, 2, -1, 1, -2).unwrap()).unwrap();
        assert!(trace.sound);
        assert!(trace_is_consistent(&trace));
        assert!(trace.final_value.is_zero());
    }

    #[test]
    fn replay_rejects_ell_zero() {
        assert!(replay_theorem_g(GArgs::new(0, 1, 0, 0, 0, 0).unwrap()).is_err());
    }
}
