//! SVD and Pauli sub-decompositions of the velocity and collision blocks.

use nalgebra::DMatrix;

use lcnu_core::{pauli_decompose, PauliTerm, SparseMatrix};

use crate::collision::{collision_coeffs, CollisionCoefficients};
use crate::config::LbeConfig;
use crate::error::{LbeError, Result};
use crate::operators::{gamma_matrix, r_matrix, velocity_matrix, RealMatrix};

/// Coefficients at or below this magnitude are dropped.
pub const PAULI_TOL: f64 = 1e-8;

/// `M = W diag(sigma) V^T` with singular values descending; `terms` decompose `diag(sigma)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SvdDecomposition {
    pub w: DMatrix<f64>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<f64>,
    pub terms: Vec<PauliTerm<f64>>,
}

impl SvdDecomposition {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.w * DMatrix::from_diagonal(&self.sigma.clone().into()) * self.v.transpose()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubDecompositions {
    pub q: usize,
    /// Pauli terms of `E_x`, `E_y`, `E_z`.
    pub e_terms: [Vec<PauliTerm<f64>>; 3],
    /// SVD of `tau R`.
    pub r: SvdDecomposition,
    /// SVD of `tau Gamma_q`; `None` for vanishing blocks.
    pub gamma: Vec<Option<SvdDecomposition>>,
    pub coeffs: CollisionCoefficients,
}

impl SubDecompositions {
    pub fn n_e(&self, axis: usize) -> usize {
        self.e_terms[axis].len()
    }

    pub fn n_r(&self) -> usize {
        self.r.terms.len()
    }

    pub fn n_gamma_q(&self, q: usize) -> usize {
        self.gamma[q].as_ref().map_or(0, |g| g.terms.len())
    }

    pub fn n_gamma(&self) -> usize {
        (0..self.q).map(|q| self.n_gamma_q(q)).sum()
    }
}

fn to_dmatrix(n: usize, m: &RealMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(n, n, m)
}

fn diag_terms(d: &[f64]) -> Result<Vec<PauliTerm<f64>>> {
    let n = d.len();
    let m = SparseMatrix::from_triplets(n, n, d.iter().enumerate().map(|(i, &v)| (i, i, lcnu_core::re(v))))?;
    Ok(pauli_decompose(&m, PAULI_TOL)?)
}

/// Real SVD with nonnegative descending singular values.
pub fn svd(m: &DMatrix<f64>) -> Result<SvdDecomposition> {
    let n = m.nrows();
    let s = m.clone().try_svd(true, true, 1e-15, 10_000).ok_or_else(|| LbeError::Svd("no convergence".into()))?;
    let (u, vt) = match (s.u, s.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(LbeError::Svd("missing singular vectors".into())),
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s.singular_values[b].partial_cmp(&s.singular_values[a]).unwrap_or(std::cmp::Ordering::Equal));
    let sigma: Vec<f64> = order.iter().map(|&i| s.singular_values[i]).collect();
    let w = DMatrix::from_fn(n, n, |r, c| u[(r, order[c])]);
    let v = DMatrix::from_fn(n, n, |r, c| vt[(order[c], r)]);
    let terms = diag_terms(&sigma)?;
    Ok(SvdDecomposition { w, sigma, v, terms })
}

pub fn compute_subdecompositions(cfg: &LbeConfig) -> Result<SubDecompositions> {
    cfg.lattice.require_padded()?;
    let q = cfg.lattice.q();
    let coeffs = collision_coeffs(cfg)?;
    let e_terms = [0, 1, 2].map(|axis| {
        let e = velocity_matrix(cfg, axis);
        diag_terms(&(0..q).map(|m| e[m * q + m]).collect::<Vec<_>>())
    });
    let [ex, ey, ez] = e_terms;
    let scaled = |m: RealMatrix| to_dmatrix(q, &m.iter().map(|v| v * cfg.tau).collect());
    let r = svd(&scaled(r_matrix(&coeffs)))?;
    let mut gamma = Vec::with_capacity(q);
    for qi in 0..q {
        let g = gamma_matrix(&coeffs, qi);
        gamma.push(if g.iter().all(|v| *v == 0.0) { None } else { Some(svd(&scaled(g))?) });
    }
    Ok(SubDecompositions { q, e_terms: [ex?, ey?, ez?], r, gamma, coeffs })
}
