//! Failure categories and their exit codes.

use std::fmt;

use tripole_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;
pub const EXIT_INDETERMINATE: u8 = 5;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Precondition(String),
    Invariant(String),
    Other(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Other(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error {m}"),
            CliError::Precondition(m) => write!(f, "{m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
            CliError::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) => CliError::Precondition(e.to_string()),
            Error::NotAnInteger { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Config(format!("rejected: {e}")),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Other(e)
    }
}
