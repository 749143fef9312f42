use thiserror::Error;

/// Failure classes mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, ranges or files; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A computed deviation exceeded its tolerance; exit code 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<su11_core::Error> for CliError {
    fn from(e: su11_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
