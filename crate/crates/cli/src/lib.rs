//! Command implementations behind the `modkit` binary.
//!
//! Every command returns an [`Outcome`]: the rendered output and whether all
//! checks passed. The binary maps that to exit codes `0` (pass), `1` (check
//! failure) and `2` (usage error).

pub mod commands;
pub mod ising;
pub mod render;
pub mod suite;
pub mod system;

use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<modkit_core::Error> for CliError {
    fn from(e: modkit_core::Error) -> Self {
        match e {
            modkit_core::Error::UnknownGraph(_) | modkit_core::Error::Format(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
