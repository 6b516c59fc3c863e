use thiserror::Error;

use crate::lp::LpError;

/// Errors raised while building problems or computing projections.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("row {0} of the constraint matrix is entirely zero")]
    ZeroRow(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("query point is not interior")]
    NotInterior,

    #[error("radius hint {radius} too small: the ray is still inside the body at that distance")]
    RadiusHintViolation { radius: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("linear program failed: {0}")]
    Lp(#[from] LpError),
}

pub type Result<T> = std::result::Result<T, ProjError>;
