//! Direct solves of the time-stepped system and the explicit reference.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::Serialize;

use lcnu_carleman::{assemble_carleman, initial_state, pad_system, padded_offset, CarlemanConfig, PaddedSystem, PolynomialODE};
use lcnu_core::{Real, SparseComplexMatrix};

use crate::dense::{to_c64, DenseLu, C};
use crate::error::{AnalysisError, Result};

type Triplets = Vec<(usize, usize, C)>;

/// Solves `M y = rhs` for a block lower-bidiagonal `M` with square blocks of
/// size `block`, by forward substitution with one dense LU per distinct
/// diagonal block.
pub fn block_forward_solve<T: Real>(m: &SparseComplexMatrix<T>, block: usize, rhs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = m.nrows();
    if m.ncols() != n || block == 0 || n % block != 0 || rhs.len() != n {
        return Err(AnalysisError::Invalid(format!("{}x{} system with block {block} and rhs {}", n, m.ncols(), rhs.len())));
    }
    let steps = n / block;
    let mut diag: Vec<Triplets> = vec![Vec::new(); steps];
    let mut sub: Vec<Triplets> = vec![Vec::new(); steps];
    for (r, c, v) in m.triplets() {
        let (tr, tc) = (r / block, c / block);
        let entry = (r % block, c % block, to_c64(v));
        if tr == tc {
            diag[tr].push(entry);
        } else if tc + 1 == tr {
            sub[tr].push(entry);
        } else {
            return Err(AnalysisError::Invalid(format!("entry ({r}, {c}) outside the block bidiagonal")));
        }
    }
    let mut y: Vec<C> = Vec::with_capacity(n);
    let mut cached: Option<(usize, DenseLu)> = None;
    for t in 0..steps {
        let mut b: Vec<C> = rhs[t * block..(t + 1) * block].iter().map(|&z| to_c64(z)).collect();
        for &(i, j, v) in &sub[t] {
            b[i] -= v * y[(t - 1) * block + j];
        }
        let reuse = matches!(&cached, Some((k, _)) if diag[*k] == diag[t]);
        if !reuse {
            let mut d = DMatrix::<C>::zeros(block, block);
            for &(i, j, v) in &diag[t] {
                d[(i, j)] += v;
            }
            let lu = DenseLu::new(d).map_err(|e| match e {
                AnalysisError::Singular(s) => AnalysisError::Singular(format!("time block {t}: {s}")),
                other => other,
            })?;
            cached = Some((t, lu));
        }
        let (_, lu) = cached.as_ref().expect("factored above");
        y.extend(lu.solve(&b)?);
    }
    Ok(y.into_iter().map(|z| Complex::new(T::lit(z.re), T::lit(z.im))).collect())
}

/// `Y^(e)` from `L^(e) Y^(e) = B^(e)`.
pub fn solve_padded<T: Real>(p: &PaddedSystem<T>) -> Result<Vec<Complex<T>>> {
    block_forward_solve(&p.l_e, p.block_size(), &p.b_e)
}

/// Padded indices that carry no Carleman coordinate.
pub fn padding_indices<T: Real>(p: &PaddedSystem<T>) -> Vec<usize> {
    let used: BTreeSet<usize> = p.full_layout().into_iter().collect();
    (0..p.l_e.nrows()).filter(|i| !used.contains(i)).collect()
}

/// The `f` block of every time step of a padded solution.
pub fn trajectory<T: Real>(p: &PaddedSystem<T>, y: &[Complex<T>]) -> Vec<Vec<Complex<T>>> {
    let off = padded_offset(p.n, p.alpha, 1);
    (0..p.n_t).map(|t| y[t * p.block_size() + off..][..p.n].to_vec()).collect()
}

/// Classic RK4 on the polynomial ODE, sampled at `k dt` for `k < n_t`, with
/// `substeps` explicit steps per `dt`.
pub fn rk4_reference<T: Real>(
    ode: &PolynomialODE<T>,
    f0: &[Complex<T>],
    dt: T,
    n_t: usize,
    substeps: usize,
) -> Result<Vec<Vec<Complex<T>>>> {
    if f0.len() != ode.n() || substeps == 0 {
        return Err(AnalysisError::Invalid("initial state or substep count".into()));
    }
    let h = dt / T::lit(substeps as f64);
    let axpy = |x: &[Complex<T>], k: &[Complex<T>], s: T| -> Vec<Complex<T>> {
        x.iter().zip(k).map(|(&a, &b)| a + b * s).collect()
    };
    let two = T::lit(2.0);
    let mut x = f0.to_vec();
    let mut out = vec![x.clone()];
    for _ in 1..n_t {
        for _ in 0..substeps {
            let k1 = ode.rhs(&x)?;
            let k2 = ode.rhs(&axpy(&x, &k1, h / two))?;
            let k3 = ode.rhs(&axpy(&x, &k2, h / two))?;
            let k4 = ode.rhs(&axpy(&x, &k3, h))?;
            let s = h / T::lit(6.0);
            for i in 0..x.len() {
                x[i] = x[i] + (k1[i] + k2[i] * two + k3[i] * two + k4[i]) * s;
            }
        }
        out.push(x.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolveConfig<T> {
    pub n_t: usize,
    pub dt: T,
    /// Reference steps per `dt`.
    pub substeps: usize,
}

impl<T: Real> SolveConfig<T> {
    pub fn new(n_t: usize, dt: T) -> Self {
        Self { n_t, dt, substeps: 100 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveRow<T> {
    pub alpha: usize,
    /// Max over time steps and components of `|f_carleman - f_reference|`.
    pub max_error: T,
    pub final_error: T,
    /// Largest `|Y^(e)_i|` on padding coordinates, relative to `max |Y^(e)|`.
    pub padded_max: T,
    /// `max |L^(e) Y^(e) - B^(e)|`.
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport<T> {
    pub n_t: usize,
    pub dt: T,
    pub substeps: usize,
    pub rows: Vec<SolveRow<T>>,
}

fn max_diff<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y).norm()).fold(T::zero(), T::max)
}

/// Solves the padded system for each truncation order and compares the `f`
/// trajectory with the explicit reference.
pub fn classical_solve_compare<T: Real>(
    ode: &PolynomialODE<T>,
    cfg: &SolveConfig<T>,
    alphas: &[usize],
    f0: &[Complex<T>],
) -> Result<SolveReport<T>> {
    let reference = rk4_reference(ode, f0, cfg.dt, cfg.n_t, cfg.substeps)?;
    let mut rows = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let ccfg = CarlemanConfig::new(alpha, cfg.n_t, cfg.dt)?;
        let y0 = initial_state(f0, alpha);
        let sys = assemble_carleman(ode, &ccfg, Some(&y0))?;
        let padded = pad_system(&sys, &ccfg)?;
        let y = solve_padded(&padded)?;
        let traj = trajectory(&padded, &y);
        let errs: Vec<T> = traj.iter().zip(&reference).map(|(a, b)| max_diff(a, b)).collect();
        let scale = y.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        let pad = padding_indices(&padded).into_iter().map(|i| y[i].norm()).fold(T::zero(), T::max);
        let ly = padded.l_e.mul_vec(&y)?;
        rows.push(SolveRow {
            alpha,
            max_error: errs.iter().copied().fold(T::zero(), T::max),
            final_error: *errs.last().expect("n_t >= 2"),
            padded_max: if scale > T::zero() { pad / scale } else { pad },
            residual: max_diff(&ly, &padded.b_e),
        });
    }
    Ok(SolveReport { n_t: cfg.n_t, dt: cfg.dt, substeps: cfg.substeps, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn forward_solve_matches_hand_elimination() {
        // [[2, 0], [1, 4]] with unit blocks
        let m = SparseComplexMatrix::from_real_dense(2, 2, &[2.0, 0.0, 1.0, 4.0]).unwrap();
        let y = block_forward_solve(&m, 1, &[c(2.0), c(9.0)]).unwrap();
        assert!((y[0] - c(1.0)).norm() < 1e-15 && (y[1] - c(2.0)).norm() < 1e-15);
    }

    #[test]
    fn coupling_above_the_diagonal_is_rejected() {
        let m = SparseComplexMatrix::from_real_dense(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(block_forward_solve(&m, 1, &[c(1.0), c(1.0)]), Err(AnalysisError::Invalid(_))));
    }

    #[test]
    fn singular_block_is_reported() {
        let m = SparseComplexMatrix::from_real_dense(2, 2, &[1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(matches!(block_forward_solve(&m, 1, &[c(1.0), c(1.0)]), Err(AnalysisError::Singular(_))));
    }

    #[test]
    fn rk4_integrates_exponential_decay() {
        let mut ode = PolynomialODE::<f64>::new(0, 1);
        ode.set(1, SparseComplexMatrix::from_real_dense(1, 1, &[-1.0]).unwrap()).unwrap();
        let r = rk4_reference(&ode, &[c(1.0)], 0.5, 3, 50).unwrap();
        assert!((r[2][0].re - (-1.0f64).exp()).abs() < 1e-10);
    }
}
