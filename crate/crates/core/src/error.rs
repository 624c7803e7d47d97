//! Error type shared by all modules.

/// Errors surfaced by the exact-arithmetic kernel and the checkers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1: {0}")]
    SpecializationPole(String),
    #[error("unbound symbol: {0}")]
    UnboundSymbol(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree cap exceeded: {0}")]
    DegreeCapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
