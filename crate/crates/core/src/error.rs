use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A caller-supplied configuration value is out of its domain.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Input data violates a documented precondition.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("duplicate record id `{0}`")]
    DuplicateId(String),
    #[error("cannot split a corpus of {0} records into three parts")]
    SplitTooSmall(usize),
    #[error("documents carry more than one party label")]
    MixedParty,
    #[error("conditional probability undefined: `{0}` never observed")]
    UnseenContext(String),
    #[error("empty document")]
    EmptyDocument,
    #[error("empty window")]
    EmptyWindow,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("training data lacks class {0}")]
    MissingClass(i8),
    #[error("length mismatch: {0} predictions vs {1} gold labels")]
    LengthMismatch(usize, usize),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
