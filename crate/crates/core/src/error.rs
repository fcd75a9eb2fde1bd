use thiserror::Error;

/// Errors reported by the library.
///
/// `InvalidInput` covers malformed or out-of-range caller data, `Unsupported`
/// covers operations that are deliberately not provided for the given field or
/// shape, and `Invariant` signals that an internal consistency check failed on
/// data that passed input validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
