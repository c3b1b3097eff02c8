use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("input error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    /// 2 for anything the user can fix in the invocation, 1 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Numerical(_) => 1,
            _ => 2,
        }
    }

    pub fn numerical(e: impl std::fmt::Display) -> Self {
        Self::Numerical(e.to_string())
    }
}

impl From<kgscat_core::CoreError> for CliError {
    fn from(e: kgscat_core::CoreError) -> Self {
        Self::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.to_string())
    }
}
