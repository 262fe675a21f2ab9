use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("malformed config: {0}")]
    Config(String),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] dlpp_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: std::io::Error },
    #[error("cannot read {}: {source}", path.display())]
    Input { path: PathBuf, source: std::io::Error },
    #[error("malformed input {}: {reason}", path.display())]
    Format { path: PathBuf, reason: String },
}

impl LabError {
    /// Process exit code for the command line. Usage errors (2) are reported
    /// by the argument parser before any of these can occur.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 3,
            LabError::Output { .. } => 4,
            LabError::Invalid(_) | LabError::Core(_) => 5,
            LabError::Input { .. } | LabError::Format { .. } => 6,
        }
    }
}
