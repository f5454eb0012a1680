use lcnu_core::CoreError;
use lcnu_lbe::LbeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Lbe(#[from] LbeError),
    #[error("no cost rule for factor `{0}`")]
    NoCostRule(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("matrix of dimension 2^{qubits} exceeds the Pauli transform cap 2^{cap}")]
    TooLarge { qubits: u32, cap: u32 },
    #[error("report output: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, ResourceError>;
