use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] weakint::Error),

    #[error("verification failed: {0} scenario(s) outside tolerance")]
    VerifyFailed(usize),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    /// Process exit code; each estimation failure mode gets its own.
    pub fn exit_code(&self) -> i32 {
        use weakint::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(E::InvalidParameter(_)) => 2,
            CliError::Model(E::OutOfRange(_)) => 3,
            CliError::Model(E::NonInvertible(_)) => 4,
            CliError::Model(E::DarkPort { .. }) => 5,
            CliError::Model(_) => 8,
            CliError::VerifyFailed(_) => 6,
            CliError::Io { .. } => 7,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
