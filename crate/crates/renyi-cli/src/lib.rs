//! Command implementations, file formats, and rendering behind the
//! `renyi` binary. Kept as a library so the formats round-trip under
//! test: everything the tool emits, the same tool can parse back.

pub mod commands;
pub mod dto;
pub mod formats;
pub mod parse;
pub mod svg;

use std::fmt;

/// Errors surfaced to the user, split by exit code: malformed input data
/// exits 2, well-formed queries outside their valid range exit 3.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unparseable or invalid input data (exit 2).
    Input(String),
    /// Valid input outside the mathematical domain (exit 3).
    Range(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Range(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Range(_) => 3,
        }
    }
}

impl From<renyi::Error> for CliError {
    fn from(e: renyi::Error) -> CliError {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Range(e.to_string())
        }
    }
}

/// Everything a command produces: the rendered output plus whether the
/// run found verification violations (exit 1).
#[derive(Debug, Clone)]
pub struct CommandOutput {
    /// Rendered file content (CSV, JSON or SVG).
    pub text: String,
    /// True when a verification run recorded violations.
    pub violations: bool,
}

impl CommandOutput {
    pub(crate) fn clean(text: String) -> CommandOutput {
        CommandOutput {
            text,
            violations: false,
        }
    }
}
