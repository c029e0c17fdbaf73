use thiserror::Error;

/// Errors produced by parsing, validation and the transformation pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("variable x{index} at column {column} is out of range for {n} registers")]
    VariableOutOfRange {
        index: usize,
        n: usize,
        column: usize,
    },

    #[error("state index {index} is out of range [1, {size}]")]
    StateOutOfRange { index: usize, size: usize },

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("register count {0} is not supported (must be in [1, {max}])", max = crate::stp::MAX_STAGES)]
    UnsupportedStageCount(usize),

    #[error("transition matrix does not follow the Fibonacci shift law at column {column}")]
    NotFibonacci { column: usize },

    #[error("permutation is not a bijection of the state set")]
    NotPermutation,

    #[error("permutation does not preserve the output partition at state {state}")]
    NotPartitionPreserving { state: usize },

    #[error("invalid delta-format matrix: {0}")]
    DeltaFormat(String),

    #[error("invalid sequence: {0}")]
    SequenceFormat(String),

    #[error("invalid FSR file at line {line}: {message}")]
    FsrFile { line: usize, message: String },

    #[error("{0}")]
    Enumeration(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
