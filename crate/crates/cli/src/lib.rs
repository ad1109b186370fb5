//! Library half of the `tracekit` command-line tool: experiment
//! configuration, the benchmark runner, and CSV output.

pub mod bench;

use std::fmt;

/// CLI failures, split by exit code: usage errors exit with 1, data errors
/// (I/O, parsing) with 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError::Data(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tracekit::Error> for CliError {
    fn from(err: tracekit::Error) -> Self {
        match err {
            // Asking for an unsupported dimension or estimator is a usage
            // problem; broken inputs are data problems.
            tracekit::Error::NotPrime { .. }
            | tracekit::Error::DimensionTooLarge { .. }
            | tracekit::Error::NotEnumerable { .. } => CliError::Usage(err.to_string()),
            _ => CliError::Data(err.to_string()),
        }
    }
}
