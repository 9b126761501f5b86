use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("infinite field")]
    InfiniteField,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("ad-nilpotency not reached within {0} powers")]
    NotNilpotent(usize),
    #[error("factorial {0}! is not invertible in the field")]
    FactorialNotInvertible(usize),
    #[error("budget exhausted: {0}")]
    BudgetExceeded(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
