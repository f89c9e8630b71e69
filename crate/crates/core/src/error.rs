use thiserror::Error;

/// Errors produced by the localization library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("{count} active sensors cannot be split evenly into {regions} regions")]
    Indivisible { count: usize, regions: usize },

    #[error("distance between target and sensor is zero")]
    ZeroDistance,

    #[error("invalid code matrix: {0}")]
    Code(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid configuration `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("enumeration over 2^{n_k} words refused (limit 2^{limit})")]
    EnumerationTooLarge { n_k: usize, limit: usize },

    #[error("empty sensor set")]
    EmptySensorSet,

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
