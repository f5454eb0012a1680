//! BGK collision coefficients of the cubic equilibrium expansion.

use crate::config::{GammaFill, LbeConfig};
use crate::error::{LbeError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CollisionCoefficients {
    pub q: usize,
    /// `beta[m * Q + q]`.
    pub beta: Vec<f64>,
    /// `gamma[(q * Q + m) * Q + r]`.
    pub gamma: Vec<f64>,
}

impl CollisionCoefficients {
    pub fn beta(&self, m: usize, q: usize) -> f64 {
        self.beta[m * self.q + q]
    }

    pub fn gamma(&self, q: usize, m: usize, r: usize) -> f64 {
        self.gamma[(q * self.q + m) * self.q + r]
    }
}

/// `beta_{m,q} = (w_m (a + b e_m.e_q) - delta_{mq}) / tau` and
/// `gamma_{q,m,r} = w_m (c (e_m.e_q)(e_m.e_r) + d e_q.e_r) / tau`, zero on padding rows.
pub fn collision_coeffs(cfg: &LbeConfig) -> Result<CollisionCoefficients> {
    if !(cfg.tau > 0.0) {
        return Err(LbeError::Config(format!("tau = {} must be positive", cfg.tau)));
    }
    let lat = &cfg.lattice;
    let qe = lat.q();
    let qp = lat.physical_q();
    let mut beta = vec![0.0; qe * qe];
    let mut gamma = vec![0.0; qe * qe * qe];
    for m in 0..qp {
        let w = lat.weight(m);
        for q in 0..qp {
            let delta = if m == q { 1.0 } else { 0.0 };
            beta[m * qe + q] = (w * (cfg.a + cfg.b * lat.dot(m, q) as f64) - delta) / cfg.tau;
            for r in 0..qp {
                let v = w
                    * (cfg.c * (lat.dot(m, q) * lat.dot(m, r)) as f64 + cfg.d * lat.dot(q, r) as f64)
                    / cfg.tau;
                gamma[(q * qe + m) * qe + r] = v;
            }
        }
    }
    if cfg.gamma_fill == GammaFill::Symmetric {
        for q in qp..qe {
            for m in 0..qe {
                for r in 0..qe {
                    gamma[(q * qe + m) * qe + r] = gamma[(r * qe + m) * qe + q];
                }
            }
        }
    }
    Ok(CollisionCoefficients { q: qe, beta, gamma })
}
