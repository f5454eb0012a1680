use thiserror::Error;

use lcnu_analysis::AnalysisError;
use lcnu_carleman::CarlemanError;
use lcnu_circuits::CircuitError;
use lcnu_core::CoreError;
use lcnu_lbe::LbeError;
use lcnu_resources::ResourceError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Verify(_) | CliError::Runtime(_) => 1,
            CliError::Cap(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("io: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(format!("json: {e}"))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TooLarge { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<CarlemanError> for CliError {
    fn from(e: CarlemanError) -> Self {
        match e {
            CarlemanError::Core(c) => c.into(),
            CarlemanError::Config(_) => CliError::Config(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<LbeError> for CliError {
    fn from(e: LbeError) -> Self {
        match e {
            LbeError::Core(c) => c.into(),
            LbeError::Carleman(c) => c.into(),
            LbeError::UnknownLattice(_)
            | LbeError::NotPadded(_)
            | LbeError::InvalidLattice(_)
            | LbeError::Config(_)
            | LbeError::Parse(_) => CliError::Config(e.to_string()),
            LbeError::Svd(_) => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::QubitLimit { .. } => CliError::Cap(e.to_string()),
            CircuitError::Core(c) => c.into(),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<ResourceError> for CliError {
    fn from(e: ResourceError) -> Self {
        match e {
            ResourceError::TooLarge { .. } => CliError::Cap(e.to_string()),
            ResourceError::Params(_) => CliError::Config(e.to_string()),
            ResourceError::Core(c) => c.into(),
            ResourceError::Lbe(l) => l.into(),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::TooLarge { .. } => CliError::Cap(e.to_string()),
            AnalysisError::Core(c) => c.into(),
            AnalysisError::Carleman(c) => c.into(),
            AnalysisError::Invalid(_) => CliError::Config(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}
