//! Bar invariance of the emitted presentation.
//!
//! The bar map sends q -> q^-1, the torus to its inverse (Kt^x -> Kt^-x and
//! K_mu -> K_mu^-1), fixes every B_i, and sends the formal parameter symbol
//! to its declared image. The letter-only relations must be fixed termwise;
//! the torus and weight relations come in mu <-> -mu pairs, so the relation
//! set is checked for bar-stability instead. The twisted-pair relation is
//! emitted unverified and is skipped here.

use crate::error::Result;
use crate::report::Report;
use crate::scalar::Scalar;

use super::poly::FreePoly;
use super::present::{emit_presentation, IqgParams, RelKind};

/// Declared bar image of the formal parameter symbol s.
#[derive(Clone, Debug)]
pub struct BarDecl {
    pub sigma_image: Scalar,
}

impl BarDecl {
    /// The split-case condition: s q_i bar-fixed, i.e. bar(s) = q^(2 eps) s.
    pub fn sigma_q_fixed(eps: i64) -> Self {
        Self { sigma_image: Scalar::monomial(1, 2 * eps, 0, 1) }
    }
}

pub fn bar_check(params: &IqgParams, decl: &BarDecl) -> Result<Report> {
    let pres = emit_presentation(params)?;
    let mut parts = Vec::new();
    let set_checked: Vec<&FreePoly> = pres
        .relations
        .iter()
        .filter(|r| matches!(r.kind, RelKind::Torus | RelKind::Weight))
        .map(|r| &r.poly)
        .collect();
    for rel in &pres.relations {
        if !rel.verified {
            continue; // the twisted-pair relation is out of verification scope
        }
        let image = rel.poly.bar(&decl.sigma_image)?;
        match rel.kind {
            RelKind::Torus | RelKind::Weight => {
                let stable = set_checked.iter().any(|p| **p == image);
                parts.push(Report::from_zero_check(
                    "bar:set-stable",
                    rel.label.clone(),
                    stable,
                    || image.to_string(),
                ));
            }
            _ => {
                let diff = image.sub(&rel.poly);
                parts.push(Report::from_zero_check(
                    "bar:fixed",
                    rel.label.clone(),
                    diff.is_zero(),
                    || diff.to_string(),
                ));
            }
        }
    }
    Ok(Report::merge("bar", "presentation", &parts))
}
