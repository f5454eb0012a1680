use lcnu_carleman::CarlemanError;
use lcnu_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LbeError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Carleman(#[from] CarlemanError),
    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),
    #[error("lattice `{0}` is not padded to a power-of-two velocity count")]
    NotPadded(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("singular value decomposition failed: {0}")]
    Svd(String),
    #[error("lattice file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LbeError>;
