use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("comparison failed: {0}")]
    Comparison(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Comparison(_) => 4,
        }
    }
}

impl From<creepwave::Error> for CliError {
    fn from(e: creepwave::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}
