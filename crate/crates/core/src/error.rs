use thiserror::Error;

/// Errors raised by set operations, solvers and the closed-form predictors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}-d point, got {got}-d")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("point is not in the set")]
    PointNotInSet,

    #[error("no feasible point found: {0}")]
    Infeasible(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
