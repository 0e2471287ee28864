use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Unsupported type/rank or bad option values.
    #[error("configuration error: {0}")]
    Config(String),
    /// User input (partition text, type letter) failed validation.
    #[error("invalid input: {0}")]
    Validation(String),
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// An internal consistency check failed; indicates a bug or a broken
    /// mathematical invariant.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("time budget of {0} s exceeded")]
    TimeBudget(u64),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
