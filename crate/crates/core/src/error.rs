use thiserror::Error;

/// Errors shared by every solver and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed data: bad graph invariants, unknown edge ids, parse failures.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation received a graph of the wrong shape (cycle where a tree
    /// was required, disconnected where connected was required, ...).
    #[error("shape error: {0}")]
    Shape(String),

    /// The instance exceeds a configured size limit of the chosen algorithm.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}
