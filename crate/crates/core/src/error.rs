use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("duplicate member {0} in family")]
    DuplicateMember(String),

    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(u32, u32),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("target size is not an integer: {0}")]
    NonIntegralSize(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
