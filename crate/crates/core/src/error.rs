use thiserror::Error;

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no finite Cartan type {letter}{rank}")]
    InvalidType { letter: char, rank: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("node index {index} out of range for rank {rank}")]
    NodeOutOfRange { index: usize, rank: usize },

    #[error("orbit enumeration exceeded the element budget of {budget}")]
    BudgetExceeded { budget: usize },

    #[error("element is not in the enumerated orbit")]
    NotInOrbit,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("invalid configuration: {field}: {message}")]
    Config { field: &'static str, message: String },

    #[error("invalid cache file: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        Error::Config { field, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
