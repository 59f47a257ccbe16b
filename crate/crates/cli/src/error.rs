use thiserror::Error;

/// Exit status for invalid input.
pub const EXIT_USER: u8 = 1;
/// Exit status for a failed internal consistency check.
pub const EXIT_INTERNAL: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Core(#[from] carlitz_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed report: {0}")]
    Report(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    /// A modulus whose computation tripped an internal check.
    #[error("modulus {modulus}: {source}")]
    AtModulus { modulus: String, source: Box<CliError> },
    #[error("{0} verification failure(s)")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => EXIT_INTERNAL,
            CliError::AtModulus { source, .. } => source.exit_code(),
            CliError::VerifyFailed(_) => EXIT_INTERNAL,
            _ => EXIT_USER,
        }
    }
}
