use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An exact-only operation was asked to work on approximate entries.
    #[error("exact arithmetic required: {0}")]
    UnsupportedExact(String),

    #[error("evaluation point {z} is a pole (nearest pole {nearest})")]
    Pole { z: String, nearest: String },

    #[error("eigenvalue bracketing failed: {0}")]
    BracketFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
