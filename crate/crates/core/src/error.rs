use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the engine. Cloneable so lazily computed facts can be
/// shared between checks.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("time budget exhausted")]
    Timeout,

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not central")]
    NotCentral,

    #[error("ideal belongs to a different ring")]
    RingMismatch,

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("element id {0} out of range")]
    ElementOutOfRange(usize),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("check `{check}` does not apply: {reason}")]
    NotApplicable { check: String, reason: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    /// True for errors that mean "this instance is too large for the configured
    /// budget", as opposed to a bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Timeout)
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
