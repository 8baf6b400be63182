use thiserror::Error;

/// Errors raised by the library. Each variant maps to a CLI exit status via
/// [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown algebra label {0:?}")]
    UnknownLabel(String),
    #[error("{what} has size {size}, over the cap {cap}")]
    Capacity { what: String, size: u128, cap: u128 },
    #[error("not supported: {0}")]
    Capability(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no split sign table row for {0}")]
    UnknownTable(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::UnknownLabel(_) | Error::NotApplicable(_) => 1,
            Error::Capacity { .. } | Error::Capability(_) => 2,
            Error::UnknownTable(_) | Error::Integrity(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
