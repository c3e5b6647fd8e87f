//! `cohaq`: command-line verification of cohomological Hall algebra
//! identities on top of `coha-core`.

pub mod cli;
pub mod expr;
pub mod quiver_io;
pub mod report;
pub mod suites;

use coha_core::AlgError;
use thiserror::Error;

/// Configuration and usage errors; all map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: malformed quiver file: {message}")]
    QuiverJson { path: String, line: usize, column: usize, message: String },
    #[error("{path}: invalid quiver: {message}")]
    InvalidQuiver { path: String, message: String },
    #[error("{0}")]
    Computation(AlgError),
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> Self {
        CliError::Computation(e)
    }
}

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IDENTITY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
}
