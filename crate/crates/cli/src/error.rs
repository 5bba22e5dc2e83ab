use std::path::Path;

/// Failure of a subcommand, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, parameters or generator config (exit 2).
    #[error("{0}")]
    Usage(String),
    /// Unreadable or invalid input, or a failed write (exit 3).
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }

    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Data(format!("{}: {e}", path.display()))
    }
}

impl From<epiclust::Error> for CliError {
    fn from(e: epiclust::Error) -> Self {
        use epiclust::Error as E;
        match e {
            E::InvalidParameter(_) | E::Config(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}
