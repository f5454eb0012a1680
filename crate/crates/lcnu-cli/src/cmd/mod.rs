//! One module per subcommand. Each returns a JSON summary for stderr.

pub mod analysis;
pub mod build;
pub mod circuits;
pub mod estimate;
pub mod verify;

use serde::Serialize;

use lcnu_carleman::{assemble_carleman, pad_system, CarlemanConfig, CarlemanMatrices, PaddedSystem, PolynomialODE};
use lcnu_lbe::{compute_subdecompositions, enumerate_terms, lbe_ode, LbeConfig, SubDecompositions, TermCatalog};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Largest padded system assembled as a sparse matrix.
pub const BUILD_MAX_QUBITS: u32 = 22;

pub struct Assembled {
    pub lbe: LbeConfig,
    pub ode: PolynomialODE<f64>,
    pub ccfg: CarlemanConfig<f64>,
    pub sys: CarlemanMatrices<f64>,
    pub padded: PaddedSystem<f64>,
}

pub fn check_build_cap(rc: &RunConfig) -> Result<()> {
    let q = rc.system_qubits();
    if q > BUILD_MAX_QUBITS {
        return Err(CliError::Cap(format!("padded system needs {q} qubits, above the assembly cap {BUILD_MAX_QUBITS}")));
    }
    Ok(())
}

pub fn assemble(rc: &RunConfig) -> Result<Assembled> {
    check_build_cap(rc)?;
    let lbe = rc.lbe_config()?;
    let ode = lbe_ode(&lbe)?;
    let ccfg = CarlemanConfig::new(rc.alpha, rc.nt, rc.dt)?;
    let sys = assemble_carleman(&ode, &ccfg, None)?;
    let padded = pad_system(&sys, &ccfg)?;
    Ok(Assembled { lbe, ode, ccfg, sys, padded })
}

pub fn catalog(rc: &RunConfig) -> Result<(LbeConfig, SubDecompositions, TermCatalog)> {
    let lbe = rc.lbe_config()?;
    let sub = compute_subdecompositions(&lbe)?;
    let cat = enumerate_terms(&lbe, &sub, rc.alpha, rc.nt, rc.dt)?;
    Ok((lbe, sub, cat))
}

pub fn json_bytes<S: Serialize>(v: &S) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

/// The fields every report repeats.
#[derive(Serialize, Debug, Clone)]
pub struct SizeMeta {
    pub lattice: String,
    pub alpha: usize,
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub nt: usize,
    pub tau: f64,
    pub dt: f64,
}

impl SizeMeta {
    pub fn of(rc: &RunConfig) -> Self {
        Self {
            lattice: rc.lattice_name().to_string(),
            alpha: rc.alpha,
            nx: rc.nx,
            ny: rc.ny,
            nz: rc.nz,
            nt: rc.nt,
            tau: rc.tau,
            dt: rc.dt,
        }
    }
}
