use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Json { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {field}: {message}")]
    Field { path: String, field: String, message: String },
    #[error("unknown zoo entry {0:?}")]
    UnknownZoo(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] stabmod_core::Error),
}

impl CliError {
    /// Unsupported coefficient rings map to exit code 2, everything else to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(stabmod_core::Error::Unsupported(_)) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
