use thiserror::Error;

use crate::linalg::C64;

/// Errors produced by the relation toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error("basis is not orthonormal (residual {0:.3e})")]
    NotOrthonormal(f64),

    #[error("relation is not selfadjoint: {0}")]
    NotSelfadjoint(String),

    #[error("resolvent undefined: {lambda} lies in the spectrum")]
    ResolventUndefined { lambda: C64 },

    #[error("boundary data singular at lambda = {lambda}")]
    Singular { lambda: C64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch(what: impl Into<String>) -> Error {
    Error::DimensionMismatch(what.into())
}
