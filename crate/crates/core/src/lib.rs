//! Exact symbolic verification of the q-binomial identity family T/G/H,
//! the idivided-power expansions and iSerre relations of a rank-2 modified
//! quantum group, and the Serre presentation machinery for quasi-split
//! iquantum groups in a free noncommutative algebra.
//!
//! Everything is exact: the coefficient field is the fraction field of
//! integer Laurent polynomials in q, the weight monomial L = q^lambda, and
//! the parameter symbol s; every identity check is Scalar equality in
//! canonical form.

pub mod bfree;
pub mod error;
pub mod identities;
pub mod qcomb;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod ualg;

pub use error::{Error, Result};
pub use report::Report;
pub use scalar::Scalar;
pub use ualg::CartanData;
