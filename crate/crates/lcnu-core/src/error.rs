use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index ({row}, {col}) outside a {nrows}x{ncols} matrix")]
    IndexOutOfRange { row: usize, col: usize, nrows: usize, ncols: usize },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("term is trivial (materializes to zero)")]
    Trivial,
    #[error("Gram matrix leaves the rho-product set at layer {layer}, factor {factor}")]
    NotInR { layer: usize, factor: usize },
    #[error("cannot decide Gram action of factor `{0}` symbolically")]
    Undecidable(String),
    #[error("matrix of {qubits} qubits is too large to materialize")]
    TooLarge { qubits: u32 },
    #[error("matrix market: {0}")]
    MatrixMarket(String),
    #[error("io: {0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<std::io::Error> for CoreError {
    fn from(e: std::io::Error) -> Self {
        CoreError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
