use lcnu_carleman::CarlemanError;
use lcnu_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Carleman(#[from] CarlemanError),
    #[error("dense dimension {dim} exceeds the desk cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("singular system: {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("report output: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
