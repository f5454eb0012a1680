//! The two constants of the condition bound.

use serde::Serialize;

use lcnu_carleman::PolynomialODE;
use lcnu_core::Real;

use crate::dense::{lambda_max_hermitian_part, spectral_norm};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaParams<T> {
    pub beta1: T,
    pub beta2: T,
    /// `lambda_max((F_1 + F_1^dagger) / 2)`. Streaming is skew, so this is
    /// the collision matrix contribution alone.
    pub lambda_max: T,
    /// `||F_k||_2` for `k = 0..=N_F` (zero for absent blocks).
    pub f_norms: Vec<T>,
    /// Whether the strictly dissipative branch of `beta1` was taken.
    pub dissipative: bool,
}

/// `beta1` switches on the sign of `lambda_max`; `beta2 = alpha r0 / dt +
/// alpha sum_{k>=1} ||F_k||_2`.
pub fn beta_params<T: Real>(ode: &PolynomialODE<T>, alpha: usize, r0: T, dt: T) -> Result<BetaParams<T>> {
    let f_norms: Vec<f64> = (0..=ode.degree())
        .map(|k| ode.block(k).map_or(Ok(0.0), |m| spectral_norm(m)))
        .collect::<Result<_>>()?;
    let lambda = match ode.block(1) {
        Some(f1) if f1.nnz() > 0 => lambda_max_hermitian_part(f1)?,
        _ => 0.0,
    };
    let a = alpha as f64;
    let nonlinear: f64 = f_norms.iter().skip(2).sum();
    let dissipative = lambda < 0.0;
    let beta1 = if dissipative { lambda + a * nonlinear } else { a * (lambda + nonlinear) };
    let (r0, dt) = (r0.to_f64().unwrap_or(f64::NAN), dt.to_f64().unwrap_or(f64::NAN));
    let beta2 = a * r0 / dt + a * f_norms.iter().skip(1).sum::<f64>();
    Ok(BetaParams {
        beta1: T::lit(beta1),
        beta2: T::lit(beta2),
        lambda_max: T::lit(lambda),
        f_norms: f_norms.into_iter().map(T::lit).collect(),
        dissipative,
    })
}
