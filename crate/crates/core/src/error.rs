use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Exact arithmetic ran out of room (i64 rational overflow or an
    /// oversized cyclotomic order).
    #[error("arithmetic capacity exceeded: {0}")]
    ArithmeticCapacity(String),
    #[error("usage error: {0}")]
    Usage(String),
    /// A truncation window is too small for the operator or state under test.
    #[error("window sizing error: {0}")]
    Sizing(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("term count {count} exceeds cap {cap} ({context})")]
    TermCap { count: usize, cap: usize, context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
