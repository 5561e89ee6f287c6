use thiserror::Error;

/// Errors reported by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A point or spec does not match the dimension of the torus it is used with.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A vertex index outside `[0, p^n)`.
    #[error("index {index} out of range for a torus with {size} vertices")]
    IndexOutOfRange { index: u64, size: u64 },

    /// Parameters are structurally valid but not supported by the operation
    /// (typically a composite cycle length where primality is required).
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// Input violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A size guard was exceeded; the operation refuses rather than thrash.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// Malformed text in a code or family file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedParameters(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
