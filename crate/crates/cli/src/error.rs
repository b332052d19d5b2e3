use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] apolar::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_)
            | CliError::Core(
                apolar::Error::CertificateMismatch
                | apolar::Error::GeneralPositionFailure
                | apolar::Error::NoGenericDirection(_),
            ) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Input(_) => "InvalidInput",
            CliError::Io { .. } => "Io",
            CliError::Json(_) => "Json",
            CliError::Config { .. } => "Config",
            CliError::Invariant(_) => "Invariant",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
