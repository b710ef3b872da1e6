use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumerator pair violating `K·B_j >= A_j`.
    #[error("inconsistent enumerator pair: K*B_{index} < A_{index}")]
    Inconsistent { index: usize },

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("catalog: {0}")]
    Catalog(String),

    #[error("dense oracle: {0}")]
    Dense(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn code(msg: impl Into<String>) -> Self {
        Error::InvalidCode(msg.into())
    }
}
