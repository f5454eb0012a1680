//! Lattice term counts and problem sizes feeding the cost formulas.

use serde::{Deserialize, Serialize};

use lcnu_lbe::{compute_subdecompositions, padded_builtin, LbeConfig, SubDecompositions};

use crate::error::{ResourceError, Result};

/// Sub-decomposition sizes of a padded lattice; independent of the grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCounts {
    pub name: String,
    pub dims: usize,
    pub log_q: u32,
    /// `N_{E_x}, N_{E_y}, N_{E_z}`.
    pub n_e: [usize; 3],
    pub n_r: usize,
    /// `N_{Gamma_q}` for `q = 1..Q`.
    pub n_gamma_q: Vec<usize>,
}

impl LatticeCounts {
    pub fn from_subdecompositions(cfg: &LbeConfig, sub: &SubDecompositions) -> Self {
        Self {
            name: cfg.lattice.name.clone(),
            dims: cfg.lattice.dims,
            log_q: cfg.lattice.qq(),
            n_e: [0, 1, 2].map(|a| sub.n_e(a)),
            n_r: sub.n_r(),
            n_gamma_q: (0..sub.q).map(|q| sub.n_gamma_q(q)).collect(),
        }
    }

    /// Counts of a built-in lattice, computed from its decompositions on the
    /// smallest grid (they do not depend on the grid or on `tau`).
    pub fn builtin(name: &str) -> Result<Self> {
        let cfg = LbeConfig::minimal(padded_builtin(name)?, 1.0)?;
        let sub = compute_subdecompositions(&cfg)?;
        Ok(Self::from_subdecompositions(&cfg, &sub))
    }

    pub fn n_e_total(&self) -> usize {
        self.n_e.iter().sum()
    }

    pub fn n_gamma(&self) -> usize {
        self.n_gamma_q.iter().sum()
    }
}

/// One point of a resource sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostParams {
    pub counts: LatticeCounts,
    pub alpha: usize,
    /// `log n_t`.
    pub log_nt: u32,
    /// `log n_x, log n_y, log n_z`; zero for absent axes.
    pub log_axes: [u32; 3],
}

impl CostParams {
    pub fn new(counts: LatticeCounts, alpha: usize, log_nt: u32, log_axes: [u32; 3]) -> Result<Self> {
        let p = Self { counts, alpha, log_nt, log_axes };
        p.check()?;
        Ok(p)
    }

    /// Same `log n` on every spatial axis of the lattice and `n_t = n_x`.
    pub fn cubic(counts: LatticeCounts, alpha: usize, log_nx: u32) -> Result<Self> {
        let mut axes = [0; 3];
        for a in axes.iter_mut().take(counts.dims) {
            *a = log_nx;
        }
        Self::new(counts, alpha, log_nx, axes)
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(ResourceError::Params(m));
        if self.alpha < 1 {
            return bad("truncation order must be at least 1".into());
        }
        if self.log_nt < 1 {
            return bad("n_t must be at least 2".into());
        }
        for axis in 0..3 {
            let used = axis < self.counts.dims;
            if used && self.log_axes[axis] == 0 {
                return bad(format!("axis {axis} needs at least two grid points"));
            }
            if !used && self.log_axes[axis] != 0 {
                return bad(format!("axis {axis} is not part of a {}D lattice", self.counts.dims));
            }
            if !used && self.counts.n_e[axis] != 0 {
                return bad(format!("streaming terms on absent axis {axis}"));
            }
        }
        Ok(())
    }

    /// `log n` with `n` the number of lattice sites.
    pub fn log_n(&self) -> u32 {
        self.log_axes.iter().sum()
    }

    /// `log Qn`, the qubits of one Carleman register.
    pub fn log_qn(&self) -> u32 {
        self.counts.log_q + self.log_n()
    }

    /// `n_q = log(2 n_t (Qn)^alpha)`.
    pub fn system_qubits(&self) -> u32 {
        1 + self.log_nt + self.alpha as u32 * self.log_qn()
    }
}

/// `N_s = alpha(alpha+1)(2 sum N_E + N_R) + 2 (alpha-1)^2 N_Gamma + 3`.
pub fn term_count(counts: &LatticeCounts, alpha: usize) -> u64 {
    let a = alpha as u64;
    let a1 = a.saturating_sub(1);
    a * (a + 1) * (2 * counts.n_e_total() as u64 + counts.n_r as u64) + 2 * a1 * a1 * counts.n_gamma() as u64 + 3
}
