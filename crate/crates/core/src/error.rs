use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("group order {order} of {what} exceeds enumeration cap {cap}")]
    OrderExceedsCap { what: String, order: String, cap: u64 },

    #[error("no element table available for exceptional factor {0}")]
    TableMissing(String),

    #[error("distribution has zero variance")]
    ZeroVariance,

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("modulus exceeds one at index {index}: |z| = {modulus}")]
    ModulusExceedsOne { index: usize, modulus: f64 },

    #[error("invalid table cache file {path}: {message}")]
    BadCache { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Validation failures (bad input) as opposed to runtime failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::ParameterOutOfRange(_)
                | Error::Parse { .. }
                | Error::ConstraintViolated(_)
                | Error::PreconditionViolated(_)
        )
    }
}
