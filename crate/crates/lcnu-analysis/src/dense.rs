//! Dense linear algebra on desk-scale matrices, done in `f64` through nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use lcnu_core::{Real, SparseComplexMatrix};

use crate::error::{AnalysisError, Result};

/// Largest square dimension handed to a dense SVD or LU.
pub const DENSE_CAP: usize = 4096;

pub(crate) type C = Complex<f64>;

fn check_cap(dim: usize) -> Result<()> {
    if dim > DENSE_CAP {
        return Err(AnalysisError::TooLarge { dim, cap: DENSE_CAP });
    }
    Ok(())
}

pub(crate) fn to_c64<T: Real>(z: Complex<T>) -> C {
    C::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

pub fn to_dense<T: Real>(m: &SparseComplexMatrix<T>) -> Result<DMatrix<C>> {
    check_cap(m.nrows().max(m.ncols()))?;
    let mut d = DMatrix::zeros(m.nrows(), m.ncols());
    for (r, c, v) in m.triplets() {
        d[(r, c)] = to_c64(v);
    }
    Ok(d)
}

fn to_dense_real<T: Real>(m: &SparseComplexMatrix<T>) -> Result<DMatrix<f64>> {
    check_cap(m.nrows().max(m.ncols()))?;
    let mut d = DMatrix::zeros(m.nrows(), m.ncols());
    for (r, c, v) in m.triplets() {
        d[(r, c)] = v.re.to_f64().unwrap_or(f64::NAN);
    }
    Ok(d)
}

/// All singular values, largest first.
pub fn singular_values<T: Real>(m: &SparseComplexMatrix<T>) -> Result<Vec<f64>> {
    let mut s: Vec<f64> = if m.is_real() {
        to_dense_real(m)?.singular_values().iter().copied().collect()
    } else {
        to_dense(m)?.singular_values().iter().copied().collect()
    };
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// `(sigma_max, sigma_min)`; `sigma_min` is zero for non-square input.
pub fn extreme_singular_values<T: Real>(m: &SparseComplexMatrix<T>) -> Result<(f64, f64)> {
    let s = singular_values(m)?;
    let smax = s.first().copied().unwrap_or(0.0);
    let smin = if m.nrows() == m.ncols() { s.last().copied().unwrap_or(0.0) } else { 0.0 };
    Ok((smax, smin))
}

/// Largest eigenvalue of `(M + M^dagger) / 2`.
pub fn lambda_max_hermitian_part<T: Real>(m: &SparseComplexMatrix<T>) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(AnalysisError::Invalid(format!("hermitian part of a {}x{} matrix", m.nrows(), m.ncols())));
    }
    let d = to_dense(m)?;
    let h = (&d + d.adjoint()) * C::new(0.5, 0.0);
    Ok(h.symmetric_eigenvalues().iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

/// `||M||_2` through the Gram matrix on the shorter side, so wide blocks
/// such as `F_3` stay cheap.
pub fn spectral_norm<T: Real>(m: &SparseComplexMatrix<T>) -> Result<f64> {
    if m.nnz() == 0 {
        return Ok(0.0);
    }
    let gram = if m.nrows() <= m.ncols() { m.matmul(&m.adjoint())? } else { m.adjoint().matmul(m)? };
    let g = to_dense(&gram)?;
    let top = g.symmetric_eigenvalues().iter().copied().fold(0.0, f64::max);
    Ok(top.max(0.0).sqrt())
}

/// `tridiag(-1, 1, 0)` of size `n`.
pub fn v_matrix(n: usize) -> SparseComplexMatrix<f64> {
    let one = C::new(1.0, 0.0);
    let trip = (0..n).map(|i| (i, i, one)).chain((1..n).map(|i| (i, i - 1, -one)));
    SparseComplexMatrix::from_triplets(n, n, trip).expect("in range")
}

/// `(||V_n||_2, ||V_n^{-1}||_2)` from the exact spectrum of `V V^T`:
/// `2 cos(pi / (2n + 1))` and `1 / (2 sin(pi / (4n + 2)))`.
pub fn v_norms_exact(n: usize) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    let n = n as f64;
    (2.0 * (pi / (2.0 * n + 1.0)).cos(), 1.0 / (2.0 * (pi / (4.0 * n + 2.0)).sin()))
}

/// The large-`n` forms `2` and `(n + 1) / pi` that accompany the bound.
pub fn v_norms_published(n: usize) -> (f64, f64) {
    (2.0, (n as f64 + 1.0) / std::f64::consts::PI)
}

/// LU factorization of a dense square block.
pub(crate) struct DenseLu {
    lu: nalgebra::LU<C, nalgebra::Dyn, nalgebra::Dyn>,
}

impl DenseLu {
    pub(crate) fn new(m: DMatrix<C>) -> Result<Self> {
        check_cap(m.nrows())?;
        let lu = m.lu();
        if !lu.is_invertible() {
            return Err(AnalysisError::Singular("diagonal block has a zero pivot".into()));
        }
        Ok(Self { lu })
    }

    pub(crate) fn solve(&self, b: &[C]) -> Result<Vec<C>> {
        let x = self
            .lu
            .solve(&DVector::from_column_slice(b))
            .ok_or_else(|| AnalysisError::Singular("LU back substitution failed".into()))?;
        if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(AnalysisError::Singular("non-finite solution".into()));
        }
        Ok(x.iter().copied().collect())
    }
}
