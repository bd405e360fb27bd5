use lpkit::LpError;
use thiserror::Error;

/// Failure of a command, classified by the exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or unsuitable input (exit 2).
    #[error("{0}")]
    Data(String),
    /// The arithmetic failed on otherwise valid input (exit 3).
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// A result violated a property it is guaranteed to satisfy (exit 4).
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }
}

impl From<LpError> for CliError {
    fn from(e: LpError) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
