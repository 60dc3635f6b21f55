use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration model failed to produce a simple graph after {retries} retries")]
    GenerationFailed { retries: usize },

    #[error("{what} budget exceeded: need {required}, limit is {limit} (raise it via GRAPHLIM_BUDGET)")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("color {color} out of range for k = {k}")]
    ColorOutOfRange { color: usize, k: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("weighted homomorphism sum is zero (hard-core target), log density undefined")]
    HardCoreZero,

    #[error("invalid weighted target: {0}")]
    InvalidTarget(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
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

pub type Result<T> = std::result::Result<T, Error>;
