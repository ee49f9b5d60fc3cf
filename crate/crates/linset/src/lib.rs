//! Command-line workbench for the linear-set constructions in `linset-core`:
//! configuration, report formats, file output and the batch runner.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod schema;

use std::fmt;

pub use config::{Check, ExperimentConfig, Format, PartialConfig};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidConfig,
    Io,
}

impl ErrorKind {
    pub fn tag(self) -> &'static str {
        match self {
            ErrorKind::InvalidConfig => "invalid-config",
            ErrorKind::Io => "io",
        }
    }
}

/// A failure that stops a command before it produces a report. Both kinds
/// exit with code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::InvalidConfig, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Io, message: message.into() }
    }

    pub fn to_doc(&self) -> schema::ErrorDoc {
        schema::ErrorDoc {
            schema: schema::SCHEMA_VERSION,
            error: self.kind.tag().to_string(),
            message: self.message.clone(),
            failed_checks: Vec::new(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.tag(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<linset_core::Error> for CliError {
    fn from(e: linset_core::Error) -> Self {
        CliError::config(e.to_string())
    }
}
