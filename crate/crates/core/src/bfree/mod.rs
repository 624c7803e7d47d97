//! Free noncommutative algebra with a commuting torus part: the iSerre
//! polynomial family, low-rank monomial conversions, parity independence,
//! rescaling, bar invariance, involution-preservation of the q-Serre
//! polynomial, presentation emission and the q = 1 specialization.

mod bar;
mod ops;
mod poly;
mod present;
mod varpi;

pub use bar::{bar_check, BarDecl};
pub use ops::{
    convert_to_monomial_form, idp_poly, iserre_poly, parity_independence_check, rescale_check,
    sij_poly, B1, B2,
};
pub use poly::{CommCtx, FreeMonomial, FreePoly, Letter, TermView};
pub use present::{
    constant_value, emit_presentation, specialize_presentation_q1, IqgParams, KmuDecl,
    Presentation, RelKind, Relation, RootData, SigmaValue,
};
pub use varpi::varpi_serre_check;
