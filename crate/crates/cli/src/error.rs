use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] noisy_grover::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 0 success, 1 usage, 2 verification failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Model(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}
