use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (zero inverse, bad prime, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is valid but exceeds a configured desk-scale bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The operation is not defined for this class of input (e.g. reducible characteristic polynomial).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },

    /// A discrete log or distance has no solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
