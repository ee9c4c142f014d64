use thiserror::Error;

/// Everything that can go wrong while solving an instance.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller passed an argument outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A text file could not be parsed.
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    /// The pre-drawn intervals do not represent the graph they are attached to.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    /// The brute-force oracle refused an instance that is too large.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A proven invariant failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
