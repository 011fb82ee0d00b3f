use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator '{symbol}' at position {pos}")]
    UnknownGenerator { symbol: String, pos: usize },

    #[error("monodromy is not hyperbolic (trace {trace})")]
    NotHyperbolic { trace: i64 },

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numeric check failed: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
