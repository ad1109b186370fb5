use thiserror::Error;

use crate::estimator::EstimatorKind;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by validation, parsing and I/O.
///
/// Programmer errors (dimension mismatches, out-of-range indices) panic
/// instead; see the individual operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{n} is not prime; nearest supported: {next}")]
    NotPrime { n: usize, next: usize },

    #[error("dimension {dim} exceeds the cap of {cap} for this operation")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("the {kind} estimator has no finite probe set to enumerate")]
    NotEnumerable { kind: EstimatorKind },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("duplicate matrix entry at ({i}, {j})")]
    DuplicateEntry { i: usize, j: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
