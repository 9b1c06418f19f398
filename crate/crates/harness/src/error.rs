use almost_ortho_core::Error as CoreError;
use thiserror::Error;

use crate::config::Mode;

/// Everything that can stop a run.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{mode} trial {trial} at eps = {epsilon}: {source}")]
    Numeric {
        mode: Mode,
        epsilon: f64,
        trial: usize,
        #[source]
        source: CoreError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code: 2 for bad input, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Numeric { .. } => 3,
            HarnessError::Io(_) | HarnessError::Csv(_) | HarnessError::Json(_) => 1,
        }
    }
}
