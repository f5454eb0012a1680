//! Condition numbers of the Carleman system before and after zero padding.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use lcnu_carleman::{assemble_carleman, pad_system, CarlemanConfig, CarlemanMatrices, PaddedSystem, PolynomialODE};
use lcnu_core::{Real, SparseComplexMatrix};

use crate::beta::{beta_params, BetaParams};
use crate::dense::{extreme_singular_values, spectral_norm, v_norms_exact};
use crate::error::{AnalysisError, Result};

/// How the step matrix `B` is read in the bound chain.
pub const B_READING: &str = "B = I - dt*A";

/// Relative size of `sigma_min` below which a matrix counts as singular.
const SINGULAR_RTOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport<T> {
    pub label: String,
    pub alpha: usize,
    pub n_t: usize,
    pub dt: T,
    pub r0: T,
    /// `T::max_value()` when `L` is numerically singular.
    pub kappa_l: T,
    pub kappa_le: T,
    pub ratio: T,
    pub beta1: T,
    pub beta2: T,
    pub t_total: T,
    pub bound: T,
    /// `beta1 dt < 1`; the bound is only claimed when this holds.
    pub assumption_ok: bool,
    pub singular: bool,
    pub l_norm: T,
    pub l_inv_norm: T,
    pub b_norm: T,
    pub v_norm: T,
    pub v_inv_norm: T,
    pub b_reading: String,
}

impl<T: Real> ConditionReport<T> {
    /// `1 <= ratio <= bound` up to `tol`, or `None` when the bound is not claimed.
    pub fn bound_holds(&self, tol: f64) -> Option<bool> {
        if !self.assumption_ok || self.singular {
            return None;
        }
        let (r, b) = (self.ratio.to_f64()?, self.bound.to_f64()?);
        Some(r >= 1.0 - tol && r <= b * (1.0 + tol))
    }

    /// Lower and upper estimates of `||L||_2` in terms of `||B||_2`.
    pub fn l_norm_window(&self) -> (f64, f64) {
        let b = self.b_norm.to_f64().unwrap_or(f64::NAN);
        ((1.0 + b * b).sqrt(), f64::max(2.0, 1.0 + b))
    }
}

/// `(4 sqrt(n_t) / pi) sqrt(2 beta2 T / (1 - exp(-beta2 T)))`.
pub fn ratio_bound(n_t: usize, beta2: f64, t_total: f64) -> f64 {
    let x = beta2 * t_total;
    let tail = if x.abs() < 1e-12 { 2.0 } else { 2.0 * x / -(-x).exp_m1() };
    4.0 * (n_t as f64).sqrt() / std::f64::consts::PI * tail.sqrt()
}

fn kappa(smax: f64, smin: f64, dim: usize) -> Option<f64> {
    (smin > SINGULAR_RTOL * smax * dim as f64).then(|| smax / smin)
}

/// Builds `L`, `L^(e)` and the beta constants for `ode`, then reports.
pub fn condition_report<T: Real>(ode: &PolynomialODE<T>, cfg: &CarlemanConfig<T>, r0: T) -> Result<ConditionReport<T>> {
    let sys = assemble_carleman(ode, cfg, None)?;
    let padded = pad_system(&sys, cfg)?;
    let beta = beta_params(ode, cfg.alpha, r0, cfg.dt)?;
    condition_from_system(&sys, &padded, &beta, cfg.dt, r0)
}

pub fn condition_from_system<T: Real>(
    sys: &CarlemanMatrices<T>,
    padded: &PaddedSystem<T>,
    beta: &BetaParams<T>,
    dt: T,
    r0: T,
) -> Result<ConditionReport<T>> {
    if sys.n_t != padded.n_t || sys.alpha != padded.alpha {
        return Err(AnalysisError::Invalid("unpadded and padded systems disagree".into()));
    }
    let (l_max, l_min) = extreme_singular_values(&sys.l)?;
    let (le_max, le_min) = extreme_singular_values(&padded.l_e)?;
    let k_l = kappa(l_max, l_min, sys.l.nrows());
    let k_le = kappa(le_max, le_min, padded.l_e.nrows());
    let singular = k_l.is_none() || k_le.is_none();
    let big = T::max_value();
    let dtf = dt.to_f64().unwrap_or(f64::NAN);
    let step = SparseComplexMatrix::identity(sys.a.nrows()).sub(&sys.a.scale_real(dt))?;
    let (v_norm, v_inv_norm) = v_norms_exact(sys.n_t);
    let beta1 = beta.beta1.to_f64().unwrap_or(f64::NAN);
    let beta2 = beta.beta2.to_f64().unwrap_or(f64::NAN);
    let t_total = sys.n_t as f64 * dtf;
    let lit = |x: Option<f64>| x.map_or(big, T::lit);
    Ok(ConditionReport {
        label: String::new(),
        alpha: sys.alpha,
        n_t: sys.n_t,
        dt,
        r0,
        kappa_l: lit(k_l),
        kappa_le: lit(k_le),
        ratio: lit(k_l.zip(k_le).map(|(a, b)| b / a)),
        beta1: beta.beta1,
        beta2: beta.beta2,
        t_total: T::lit(t_total),
        bound: T::lit(ratio_bound(sys.n_t, beta2, t_total)),
        assumption_ok: beta1 * dtf < 1.0,
        singular,
        l_norm: T::lit(l_max),
        l_inv_norm: if l_min > 0.0 { T::lit(1.0 / l_min) } else { big },
        b_norm: T::lit(spectral_norm(&step)?),
        v_norm: T::lit(v_norm),
        v_inv_norm: T::lit(v_inv_norm),
        b_reading: B_READING.to_string(),
    })
}

/// One point of a condition sweep over a fixed ODE.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionCase<T> {
    pub label: String,
    pub alpha: usize,
    pub n_t: usize,
    pub dt: T,
}

/// Runs the cases in parallel; results keep the input order.
pub fn condition_sweep<T: Real>(
    ode: &PolynomialODE<T>,
    r0: T,
    cases: &[ConditionCase<T>],
) -> Vec<Result<ConditionReport<T>>> {
    cases
        .par_iter()
        .map(|c| {
            let cfg = CarlemanConfig::new(c.alpha, c.n_t, c.dt)?;
            let mut r = condition_report(ode, &cfg, r0)?;
            r.label = c.label.clone();
            Ok(r)
        })
        .collect()
}

pub const CONDITION_CSV_HEADER: [&str; 13] =
    ["label", "alpha", "nt", "dt", "r0", "beta1", "beta2", "T", "kappa_L", "kappa_Le", "ratio", "bound", "assumption_ok"];

/// Gnuplot-friendly CSV: a `#` line recording the `B` reading, then a header.
pub fn write_condition_csv<T: Real, W: Write>(mut w: W, reports: &[ConditionReport<T>]) -> Result<()> {
    let io = |e: std::io::Error| AnalysisError::Io(e.to_string());
    writeln!(w, "# {B_READING}").map_err(io)?;
    let mut out = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| AnalysisError::Io(e.to_string());
    out.write_record(CONDITION_CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        let row = [
            r.label.clone(),
            r.alpha.to_string(),
            r.n_t.to_string(),
            r.dt.to_string(),
            r.r0.to_string(),
            r.beta1.to_string(),
            r.beta2.to_string(),
            r.t_total.to_string(),
            r.kappa_l.to_string(),
            r.kappa_le.to_string(),
            r.ratio.to_string(),
            r.bound.to_string(),
            r.assumption_ok.to_string(),
        ];
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush().map_err(io)?;
    Ok(())
}
