//! Error type shared by all evaluation modules.

use thiserror::Error;

/// Errors produced by parsing, geometry queries, and metric computations.
#[derive(Debug, Error)]
pub enum Error {
    /// A query time (or interval endpoint) fell outside the valid range.
    #[error("{what} = {value} outside valid range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// An argument violated a precondition (counts, rates, overlaps, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The computation is numerically degenerate on this input
    /// (rank-deficient geometry, singular covariance, flat signal,
    /// no valid windows).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A file could not be parsed; carries the 1-based line number.
    #[error("{path}:{line}: parse error: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// A file parsed but violated a format-level invariant
    /// (non-increasing timestamps, duplicate stamps, unknown keys).
    #[error("{path}:{line}: format error: {msg}")]
    Format {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 for input/parse problems,
    /// 2 for numerical/degeneracy problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Format { .. } | Error::Io(_) => 1,
            Error::OutOfRange { .. } | Error::InvalidArgument(_) | Error::Degenerate(_) => 2,
        }
    }

    /// Short machine-readable kind tag used in CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "range",
            Error::InvalidArgument(_) => "argument",
            Error::Degenerate(_) => "degenerate",
            Error::Parse { .. } => "parse",
            Error::Format { .. } => "format",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
