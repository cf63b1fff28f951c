use thiserror::Error;

/// Errors that end a command, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Validation(_) => 4,
        }
    }
}

impl From<substring_range::Error> for CliError {
    fn from(e: substring_range::Error) -> Self {
        match e {
            substring_range::Error::Io(m) => CliError::Io(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
