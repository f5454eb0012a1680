//! Pauli-string baseline for comparing decomposition sizes.

use lcnu_core::{pauli_count, SparseMatrix};

use crate::error::{ResourceError, Result};

/// Default dimension cap `2^10`; larger sizes need `allow_large`.
pub const PAULI_DEFAULT_QUBITS: u32 = 10;
/// Hard cap `2^14`.
pub const PAULI_MAX_QUBITS: u32 = 14;

/// Number of Pauli strings with coefficient magnitude above `tol`.
pub fn pauli_term_count(m: &SparseMatrix, tol: f64, allow_large: bool) -> Result<usize> {
    let qubits = m.nrows().max(1).trailing_zeros();
    let cap = if allow_large { PAULI_MAX_QUBITS } else { PAULI_DEFAULT_QUBITS };
    if qubits > cap {
        return Err(ResourceError::TooLarge { qubits, cap });
    }
    Ok(pauli_count(m, tol)?)
}
