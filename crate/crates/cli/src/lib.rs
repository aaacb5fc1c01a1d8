//! Library surface of the command-line driver, split out so integration
//! tests can exercise the run pipeline directly.

pub mod config;
pub mod figures;
pub mod observables;
pub mod output;
pub mod runs;

use sqres_core::Error;

/// Driver-level failures, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid or unphysical parameters (exit 2).
    Usage(String),
    /// Numerical failure during a run (exit 3).
    Numerical(String),
    /// Filesystem problem (exit 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) | Error::Unphysical(_) | Error::Dimension(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
