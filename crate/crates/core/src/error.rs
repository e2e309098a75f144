use thiserror::Error;

#[derive(Debug, Error)]
pub enum GtError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("classification error: face {face}: {reason}")]
    Classification { face: usize, reason: String },

    #[error("separation failure: {0}")]
    Separation(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("data integrity error: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GtError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(GtError::Domain(msg.into()))
}
