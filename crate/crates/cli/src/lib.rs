//! Command-line front end for `chios`.

pub mod args;
pub mod commands;
pub mod reports;
pub mod session;

use thiserror::Error;

pub use args::{Cli, Command, Format, InputKind};
pub use commands::{run, Outcome};

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input files or arguments; exit code 2.
    #[error("{0}")]
    Input(String),
    /// Well-formed input the computation rejects; exit code 1.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn context(self, what: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{what}: {m}")),
            CliError::Domain(m) => CliError::Domain(format!("{what}: {m}")),
        }
    }
}

impl From<chios::Error> for CliError {
    fn from(e: chios::Error) -> Self {
        if e.is_parse_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}
