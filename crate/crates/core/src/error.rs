use thiserror::Error;

/// Errors raised by every computation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("bound exceeded: {what} (limit {limit}, needed {needed})")]
    BoundExceeded {
        what: String,
        limit: usize,
        needed: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no solution found: {0}")]
    NotFound(String),

    #[error("unknown name: {0}")]
    UnknownName(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn bound(what: impl Into<String>, limit: usize, needed: usize) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            limit,
            needed,
        }
    }

    /// True for resource-ceiling failures, which the CLI reports with exit code 1.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
