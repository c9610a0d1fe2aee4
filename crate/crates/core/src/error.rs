use thiserror::Error;

/// Errors raised by the coherent-state library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("quadrature grid has measure {got}, expected {expected}")]
    WrongMeasure { expected: &'static str, got: String },

    #[error("vector is not normalized (norm {norm})")]
    Unnormalized { norm: f64 },

    #[error("truncation headroom violated: {0}")]
    Headroom(String),

    #[error("norm drift {drift:e} exceeds {limit:e} at t = {t}")]
    NormDrift { drift: f64, limit: f64, t: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
