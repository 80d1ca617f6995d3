use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    OutOfBox { index: usize, value: f64 },

    #[error("invalid argument: {0}")]
    Usage(String),

    /// An iterative routine hit its iteration cap. `best` is the last iterate.
    #[error("{routine} did not converge within {iterations} iterations")]
    Convergence {
        routine: &'static str,
        iterations: usize,
        best: Vec<f64>,
    },

    #[error("feasible region is empty")]
    Infeasible,

    #[error("online protocol violation: {0}")]
    Protocol(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
