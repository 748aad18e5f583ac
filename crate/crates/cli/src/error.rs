use std::fmt;
use std::io;

use pqbezier::PqError;

/// Failure categories, each with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed numbers or documents, rejected parameters: 2.
    Input(String),
    /// Unreadable input or unwritable output: 3.
    Io(String),
    /// The audit ran and found failing identities: 1.
    AuditFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::AuditFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn io(context: impl fmt::Display, e: io::Error) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::AuditFailed(n) => write!(f, "audit: {n} failing entries"),
        }
    }
}

impl From<PqError> for CliError {
    fn from(e: PqError) -> Self {
        CliError::Input(e.to_string())
    }
}
