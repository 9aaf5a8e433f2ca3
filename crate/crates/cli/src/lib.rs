//! Library side of the `endosplit` command: every subcommand is a pure
//! function from input text to a [`RunReport`] and an exit code, so tests
//! can drive it without spawning processes.

pub mod commands;
pub mod corpus;
pub mod doc;
pub mod report;

pub use commands::{run_check, run_split, run_tate, run_verify, Options};
pub use report::{Outcome, RunReport};

use endosplit_core::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exit {
    Ok = 0,
    Failed = 1,
    Input = 2,
    Infeasible = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Input(_) => Exit::Input,
            CliError::Infeasible(_) => Exit::Infeasible,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) | Error::SplittingFailed { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
