use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("input not found: {}", .0.display())]
    MissingInput(std::path::PathBuf),

    #[error(transparent)]
    Core(#[from] isogrow::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for bad arguments, 2 for bad or missing data, 3 for broken
    /// internal invariants.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(isogrow::Error::Internal(_)) => 3,
            _ => 2,
        }
    }
}
