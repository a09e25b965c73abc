use std::path::PathBuf;

use atomsurf_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("self-test failed: {0} check(s)")]
    SelfTest(usize),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    /// 2 for bad input, 3 when an integral failed to converge, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::NonConvergence { .. }) => 3,
            CliError::Core(_) | CliError::Validation(_) | CliError::Json { .. } | CliError::Csv { .. } => 2,
            CliError::Io { .. } | CliError::SelfTest(_) => 1,
        }
    }
}
