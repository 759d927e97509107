use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point ({x}, {y}) lies within {distance:e} of the curve system")]
    OnCurve { x: f64, y: f64, distance: f64 },

    #[error("ambiguous junction cluster: {0}")]
    AmbiguousJunction(String),

    #[error("ambiguous direction cluster at vertex {vertex}: {detail}")]
    AmbiguousDirection { vertex: usize, detail: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
