use serde::Serialize;

use crate::error::{LbeError, Result};
use crate::lattice::LatticeSpec;

/// How `Gamma_q` is defined for padding velocities `q > Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum GammaFill {
    #[default]
    Zero,
    /// `gamma_{q,m,r} = gamma_{r,m,q}` for `q > Q`.
    Symmetric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbeConfig {
    pub lattice: LatticeSpec,
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Off-lattice velocity scale used by the condition analysis.
    pub r0: f64,
    pub gamma_fill: GammaFill,
}

impl LbeConfig {
    /// Second-order equilibrium coefficients from the lattice sound speed.
    pub fn new(lattice: LatticeSpec, nx: usize, ny: usize, nz: usize, tau: f64) -> Result<Self> {
        let cs2 = lattice.cs * lattice.cs;
        let cfg = Self {
            lattice,
            nx,
            ny,
            nz,
            tau,
            a: 1.0,
            b: 1.0 / cs2,
            c: 1.0 / (2.0 * cs2 * cs2),
            d: -1.0 / (2.0 * cs2),
            r0: 1.0,
            gamma_fill: GammaFill::Zero,
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Minimal grid: two points along each active axis.
    pub fn minimal(lattice: LatticeSpec, tau: f64) -> Result<Self> {
        let dims = lattice.dims;
        let g = |axis: usize| if axis < dims { 2 } else { 1 };
        Self::new(lattice, g(0), g(1), g(2), tau)
    }

    pub fn check(&self) -> Result<()> {
        self.lattice.validate()?;
        if !(self.tau > 0.0) {
            return Err(LbeError::Config(format!("tau = {} must be positive", self.tau)));
        }
        for (name, n) in [("nx", self.nx), ("ny", self.ny), ("nz", self.nz)] {
            if n == 0 || !n.is_power_of_two() {
                return Err(LbeError::Config(format!("{name} = {n} is not a power of two")));
            }
        }
        Ok(())
    }

    /// Number of lattice sites `n = nx ny nz`.
    pub fn sites(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn log_sites(&self) -> u32 {
        self.sites().trailing_zeros()
    }

    /// `Q n`, the length of the state vector.
    pub fn state_dim(&self) -> usize {
        self.lattice.q() * self.sites()
    }

    /// `log(Qn)`.
    pub fn qn(&self) -> u32 {
        self.state_dim().trailing_zeros()
    }

    pub fn axis_len(&self, axis: usize) -> usize {
        [self.nx, self.ny, self.nz][axis]
    }
}
