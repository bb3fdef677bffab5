use std::path::PathBuf;

use ceresa_core::{JacobiError, LabelError, ScanError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(#[from] LabelError),
    #[error("invalid character list {0:?}: expected a,b;a,b;...")]
    InvalidCharacters(String),
    #[error("cache file {path} was written with format {found}, expected {expected}")]
    CacheVersionMismatch { path: PathBuf, found: String, expected: String },
    #[error("cache file {path} is unreadable: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 2 for bad input or stale state, 3 for broken invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 3,
            _ => 2,
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::CountOverflow
            | ScanError::CollapseInvariantViolated(_)
            | ScanError::InvalidAut { .. } => CliError::Invariant(e.to_string()),
            other => CliError::InvalidRange(other.to_string()),
        }
    }
}

impl From<JacobiError> for CliError {
    fn from(e: JacobiError) -> Self {
        match e {
            JacobiError::InvalidPair(l) => CliError::InvalidTriple(l),
            JacobiError::NonIntegralCoefficients { .. }
            | JacobiError::InvariantViolation(_)
            | JacobiError::ZeroArgument => CliError::Invariant(e.to_string()),
            other => CliError::InvalidRange(other.to_string()),
        }
    }
}
