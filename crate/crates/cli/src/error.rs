use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invalid input: {0}")]
    Core(#[from] photon_add_core::Error),
    #[error("I/O failure on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification failed: {0} check(s) outside tolerance")]
    Verification(usize),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Self::Invalid(msg.into())
    }

    /// 1 for failed verification, 2 for invalid input, 3 for I/O failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Verification(_) => 1,
            Self::Invalid(_) | Self::Core(_) => 2,
            Self::Io { .. } => 3,
        }
    }
}
