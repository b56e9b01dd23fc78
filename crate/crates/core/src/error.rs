use thiserror::Error;

/// Errors surfaced by constructors, oracles, solvers, and audits.
#[derive(Debug, Error)]
pub enum Error {
    /// A value, index, or parameter is outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive routine was asked to enumerate beyond its cap.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A component violated a contract it was trusted to uphold
    /// (e.g. a checkpoint subroutine returning an oversized set).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An audit found a violation; carries the step or location.
    #[error("audit failure: {0}")]
    Audit(String),

    /// Linear program reported infeasible.
    #[error("linear program infeasible: {0}")]
    Infeasible(String),

    /// Linear program reported unbounded.
    #[error("linear program unbounded: {0}")]
    Unbounded(String),

    /// Malformed or incomplete serialized input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
