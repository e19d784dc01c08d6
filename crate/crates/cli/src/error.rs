use std::path::PathBuf;

use probdyn::{ErrorClass, PdError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed evidence file: {0}")]
    Parse(String),

    #[error("{0}")]
    Schema(String),

    #[error(transparent)]
    Calculus(#[from] PdError),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const PARTITION_MISMATCH: i32 = 4;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Parse(_) | CliError::Schema(_) => exit::VALIDATION,
            CliError::Calculus(e) => match e.class() {
                ErrorClass::Validation => exit::VALIDATION,
                ErrorClass::Degenerate => exit::DEGENERATE,
                ErrorClass::PartitionMismatch => exit::PARTITION_MISMATCH,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
