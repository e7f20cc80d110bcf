use std::fmt;

use thiserror::Error;

/// Where in an input source a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// 1-based line of a CSV source.
    Line(u64),
    /// 0-based index of a JSON record.
    Record(usize),
    /// Line/column reported by the JSON parser.
    LineColumn(usize, usize),
    Unknown,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Record(i) => write!(f, "record {i}"),
            Location::LineColumn(l, c) => write!(f, "line {l}, column {c}"),
            Location::Unknown => write!(f, "unknown location"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{location}: malformed input: {message}")]
    Malformed { location: Location, message: String },

    #[error("{location}: score {score} outside [0, 1]")]
    ScoreRange { location: Location, score: f64 },

    #[error("{location}: duplicate record for model '{model}', benchmark '{benchmark}', instance '{instance}'")]
    DuplicateKey {
        location: Location,
        model: String,
        benchmark: String,
        instance: String,
    },

    #[error("{location}: instance '{instance}' of benchmark '{benchmark}' assigned to dimension '{second}' but previously to '{first}'")]
    DimensionConflict {
        location: Location,
        benchmark: String,
        instance: String,
        first: String,
        second: String,
    },

    #[error("no records for benchmark '{0}'")]
    UnknownBenchmark(String),

    #[error("no model has complete coverage of the requested columns")]
    EmptyIntersection,

    #[error("dimension '{0}' has no instances")]
    EmptyDimension(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("need at least {needed} {what}, got {got}")]
    TooFew {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
