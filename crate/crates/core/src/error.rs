use thiserror::Error;

/// Errors surfaced by the library. The CLI maps `Parse` to exit 1,
/// `ComplexViolation` to exit 2 and `Unsupported` to exit 3.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("not a complex: d*d != 0 at degree {degree}, entry ({row},{col}) = {entry}")]
    ComplexViolation {
        degree: i64,
        row: usize,
        col: usize,
        entry: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
