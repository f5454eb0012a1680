use lcnu_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("circuit on {qubits} qubits exceeds the simulation limit of {limit}")]
    QubitLimit { qubits: u32, limit: u32 },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("no circuit lowering for factor `{0}`")]
    NoLowering(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CircuitError>;
