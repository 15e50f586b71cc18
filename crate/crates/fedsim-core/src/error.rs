//! Error type shared by every simulator module.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {left} vs {right} in {op}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    /// A vector operation produced NaN or infinity. Adaptive denominators
    /// make silent NaN likely, so every operation checks and aborts instead
    /// of propagating.
    #[error("non-finite value in {context} (entry {index})")]
    NonFinite { context: &'static str, index: usize },

    #[error("non-positive entry {value} at index {index} passed to inv_sqrt")]
    NonPositiveEntry { index: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("cannot partition {samples} samples across {clients} clients")]
    ImpossiblePartition { samples: usize, clients: usize },

    #[error("label {label} out of range [0, {classes})")]
    LabelOutOfRange { label: i64, classes: usize },

    #[error("method {method} requires broadcast field {field}")]
    MissingBroadcast {
        method: &'static str,
        field: &'static str,
    },

    #[error("round {round} failed: {source}")]
    RoundFailed {
        round: usize,
        #[source]
        source: Box<CoreError>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    /// Attach a round index to an error bubbling out of a communication round.
    pub fn at_round(self, round: usize) -> CoreError {
        CoreError::RoundFailed {
            round,
            source: Box::new(self),
        }
    }
}
