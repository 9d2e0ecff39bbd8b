use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("Bell index out of range: n = {n} with shift {shift} references B_{index}")]
    Domain { n: u64, shift: i64, index: i64 },

    #[error("insufficient sample points: {0}")]
    InsufficientSamples(String),

    #[error("profile cannot represent the aggregate: {0}")]
    ProfileMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
