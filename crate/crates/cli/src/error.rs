use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    NotMonotone(String),

    #[error("{0}")]
    VerificationFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Output { .. } => 3,
            CliError::NotMonotone(_) => 4,
        }
    }
}

impl From<qdilemma::Error> for CliError {
    fn from(e: qdilemma::Error) -> Self {
        match e {
            qdilemma::Error::NotMonotone { .. } => CliError::NotMonotone(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}
