//! Core algebra for decompositions of sparse matrices into linear
//! combinations of non-unitary terms (LCNU).
//!
//! A term is `c * P_1 P_2 ... P_m` where each `P_i` is a Kronecker product of
//! basis factors: the rank-one operators `rho_{2i+j} = |i><j|`, Paulis,
//! identities, structured permutations and small dense unitaries. A term is
//! usable when its Gram matrix `L L^dagger` is a scaled Kronecker product of
//! `rho0`, `rho3` and `I`; such terms embed into a unitary with one ancilla.

pub mod completion;
pub mod error;
pub mod factor;
pub mod gram;
pub mod mm;
pub mod pauli;
pub mod scalar;
pub mod sparse;
pub mod term;
pub mod validate;

pub use completion::{complete_term, embed_term, unitary_block, EmbeddedTerm};
pub use error::{CoreError, Result};
pub use factor::{
    Affine, BasisFactor, DenseMatrix, FactorDescriptor, Pauli, PermTag, Permutation, Rho, SvdGroup, UnitaryFactor,
    UnitaryKind, UnitaryRole,
};
pub use gram::{gram_signature, GramOutcome, GramSignature, Slot};
pub use mm::{load_matrix_market, read_matrix_market, save_matrix_market, write_matrix_market};
pub use pauli::{pauli_count, pauli_decompose, PauliLetter, PauliTerm};
pub use scalar::Real;
pub use sparse::SparseComplexMatrix;
pub use term::{FactorLayer, LcnuDecomposition, OpExpr, TermExpr, TermLabel};
pub use validate::validate_lcnu;

pub type C64 = num_complex::Complex<f64>;
pub type SparseMatrix = SparseComplexMatrix<f64>;
pub type Term = TermExpr<f64>;
pub type Factor = BasisFactor<f64>;
pub type Decomposition = LcnuDecomposition<f64>;

/// `Complex::new(re, 0)`.
pub fn re<T: Real>(x: T) -> num_complex::Complex<T> {
    num_complex::Complex::new(x, T::zero())
}
