use thiserror::Error;

use crate::domain::FieldState;

pub type Result<T> = std::result::Result<T, Error>;

/// Iteration trace carried by non-convergence errors.
#[derive(Debug, Clone, Default)]
pub struct ConvergenceTrace {
    /// Last iterate reached before giving up.
    pub last: Option<FieldState>,
    /// Relative increments, one entry per iteration.
    pub history: Vec<f64>,
    /// Free-form description of where the iteration stalled.
    pub stage: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no convergence in {stage}: {iterations} iterations, last increment {last_increment:.3e}")]
    NonConvergence {
        stage: String,
        iterations: usize,
        last_increment: f64,
        trace: Box<ConvergenceTrace>,
    },

    #[error("parameter regime not supported: {0}")]
    Regime(String),

    #[error("zero pivot at column {column} during factorization")]
    SingularPivot { column: usize },

    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
