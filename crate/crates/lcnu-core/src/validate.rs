use crate::error::Result;
use crate::scalar::Real;
use crate::sparse::SparseComplexMatrix;
use crate::term::LcnuDecomposition;

/// Max entrywise residual between the summed decomposition and `reference`.
pub fn validate_lcnu<T: Real>(decomp: &LcnuDecomposition<T>, reference: &SparseComplexMatrix<T>) -> Result<T> {
    decomp.materialize()?.max_abs_diff(reference)
}
