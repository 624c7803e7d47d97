//! Structured verification outcomes.

use serde::Serialize;

/// Outcome of one checked claim. On failure the witness carries the nonzero
/// value (in canonical text form) that falsified the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claim: String,
    pub args: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Report {
    pub fn pass(claim: impl Into<String>, args: impl Into<String>) -> Self {
        Self { claim: claim.into(), args: args.into(), pass: true, witness: None }
    }

    pub fn fail(claim: impl Into<String>, args: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            claim: claim.into(),
            args: args.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_zero_check(
        claim: impl Into<String>,
        args: impl Into<String>,
        is_zero: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if is_zero {
            Self::pass(claim, args)
        } else {
            Self::fail(claim, args, witness())
        }
    }

    /// Merge sub-reports into one, concatenating failure witnesses.
    pub fn merge(claim: impl Into<String>, args: impl Into<String>, parts: &[Report]) -> Self {
        let failures: Vec<&Report> = parts.iter().filter(|r| !r.pass).collect();
        if failures.is_empty() {
            Self::pass(claim, args)
        } else {
            let witness = failures
                .iter()
                .map(|r| {
                    format!(
                        "{} [{}]: {}",
                        r.claim,
                        r.args,
                        r.witness.as_deref().unwrap_or("failed")
                    )
                })
                .collect::<Vec<_>>()
                .join("; ");
            Self::fail(claim, args, witness)
        }
    }
}
