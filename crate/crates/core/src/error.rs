use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input lies outside the region an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// An eigenvalue iteration exhausted its budget.
    #[error("power iteration did not converge at level {level} after {iterations} iterations")]
    Convergence { level: usize, iterations: usize },

    /// Rejection sampling ran out of attempts before collecting enough points.
    #[error("sampling budget exhausted: {0}")]
    SamplingBudget(String),

    #[error("invalid pair spec: {0}")]
    PairSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
