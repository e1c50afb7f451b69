use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An input that is well formed but fails a mathematical precondition
    /// (e.g. a matrix outside the admissible set), with a diagnostic summary.
    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("numeric failure: {message} (residual {residual:.3e})")]
    NumericFailure { message: String, residual: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, residual: f64) -> Self {
        Error::NumericFailure {
            message: msg.into(),
            residual,
        }
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericFailure { .. } => 3,
            _ => 2,
        }
    }
}
