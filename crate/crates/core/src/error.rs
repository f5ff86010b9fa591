use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computed quantity broke an invariant that a correct construction
    /// guarantees (e.g. the ancilla did not factor out).
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("measurement outcome {outcome} has probability {probability:e}")]
    ZeroProbabilityBranch { outcome: usize, probability: f64 },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
