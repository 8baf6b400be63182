use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] rweyl::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corrupt cache record {0}")]
    Corrupt(String),
    #[error("cache record {path} has schema {found}, expected {expected}")]
    Version { path: String, found: u32, expected: u32 },
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Corrupt(_) | CliError::Version { .. } => 3,
            CliError::VerifyFailed(_) => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
