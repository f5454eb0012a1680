//! Flags, the optional TOML file and the validated run configuration.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use lcnu_lbe::{embed_lattice, padded_builtin, LatticeSpec, LbeConfig};
use lcnu_resources::table::SvdConstants;

use crate::error::{CliError, Result};

#[derive(Parser, Debug, Clone)]
#[command(name = "carleman-lcnu", version, about = "Carleman-linearized LBE systems as LCNU terms, circuits and T counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Padded system matrix (Matrix Market) and its index layout.
    Build,
    /// Term catalog as JSON lines plus a count summary.
    Decompose,
    /// Reconstruction residual and circuit-versus-matrix checks.
    Verify,
    /// OpenQASM 3 per catalog term or for one named builder.
    Circuits,
    /// T-count report over one size or a sweep of cubic grids.
    Estimate,
    /// Pauli-string count of the padded matrix against the catalog size.
    PauliCompare,
    /// Condition numbers of the unpadded and padded systems.
    Condition,
    /// Classical solve compared with an explicit reference.
    Solve,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Mm,
    Qasm,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Off,
    #[default]
    Sampled,
    Exhaustive,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// TOML file with any of the options below; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Built-in lattice name (D1Q3, D2Q9, D3Q15) or a lattice TOML file.
    #[arg(long, global = true)]
    pub lattice: Option<String>,
    /// Grid points along x (power of two).
    #[arg(long, global = true)]
    pub nx: Option<usize>,
    #[arg(long, global = true)]
    pub ny: Option<usize>,
    #[arg(long, global = true)]
    pub nz: Option<usize>,
    /// Time steps (power of two, at least 2).
    #[arg(long, global = true)]
    pub nt: Option<usize>,
    /// Carleman truncation order.
    #[arg(long, global = true)]
    pub alpha: Option<usize>,
    /// BGK relaxation time.
    #[arg(long, global = true)]
    pub tau: Option<f64>,
    /// Time step.
    #[arg(long, global = true)]
    pub dt: Option<f64>,
    /// PREP precision.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Verification and Pauli-coefficient tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Off-lattice velocity scale.
    #[arg(long, global = true)]
    pub r0: Option<f64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub verify_level: Option<VerifyLevel>,
    /// Simulator qubit cap; also read from CARLEMAN_LCNU_MAX_QUBITS.
    #[arg(long, global = true)]
    pub max_qubits: Option<u32>,
    /// Write the primary artifact to stdout instead of the output directory.
    #[arg(long, global = true)]
    pub stdout: bool,
    /// Catalog index for `circuits`.
    #[arg(long, global = true)]
    pub term: Option<usize>,
    /// Named builder for `circuits`: pk2, pk3, m, b2q[:q], b3q[:q], commutation, incrementer.
    #[arg(long, global = true)]
    pub builder: Option<String>,
    /// `estimate` over log2 n_x = 1..=K with n_t = n_x.
    #[arg(long, global = true)]
    pub sweep: Option<u32>,
    /// T cost of the controlled collision SVD pair.
    #[arg(long, global = true)]
    pub svd_collision: Option<u64>,
    /// T cost of the controlled nonlinear SVD pair.
    #[arg(long, global = true)]
    pub svd_tensor: Option<u64>,
}

/// Keys accepted in the config file.
#[derive(Deserialize, Debug, Clone, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lattice: Option<String>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub nz: Option<usize>,
    pub nt: Option<usize>,
    pub alpha: Option<usize>,
    pub tau: Option<f64>,
    pub dt: Option<f64>,
    pub eps: Option<f64>,
    pub tol: Option<f64>,
    pub r0: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub verify_level: Option<VerifyLevel>,
    pub max_qubits: Option<u32>,
    pub stdout: Option<bool>,
    pub term: Option<usize>,
    pub builder: Option<String>,
    pub sweep: Option<u32>,
    pub svd_collision: Option<u64>,
    pub svd_tensor: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub lattice: LatticeSpec,
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub nt: usize,
    pub alpha: usize,
    pub tau: f64,
    pub dt: f64,
    pub eps: f64,
    pub tol: f64,
    pub r0: f64,
    pub out: PathBuf,
    pub format: Format,
    pub verify_level: VerifyLevel,
    pub max_qubits: u32,
    pub stdout: bool,
    pub term: Option<usize>,
    pub builder: Option<String>,
    pub sweep: Option<u32>,
    pub svd: Option<SvdConstants>,
}

fn resolve_lattice(value: &str) -> Result<LatticeSpec> {
    let path = Path::new(value);
    if value.ends_with(".toml") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{value}: {e}")))?;
        return Ok(embed_lattice(&LatticeSpec::from_toml(&text)?));
    }
    Ok(padded_builtin(value)?)
}

fn default_format(c: Command) -> Format {
    match c {
        Command::Build => Format::Mm,
        Command::Circuits => Format::Qasm,
        Command::Estimate | Command::Condition => Format::Csv,
        _ => Format::Json,
    }
}

fn allowed_formats(c: Command) -> &'static [Format] {
    match c {
        Command::Build => &[Format::Mm],
        Command::Circuits => &[Format::Qasm],
        Command::Estimate | Command::Condition | Command::Solve => &[Format::Csv, Format::Json],
        Command::Decompose | Command::Verify | Command::PauliCompare => &[Format::Json],
    }
}

fn power_of_two(name: &str, v: usize, min: usize) -> Result<()> {
    if v < min || !v.is_power_of_two() {
        return Err(CliError::Config(format!("{name} = {v} must be a power of two >= {min}")));
    }
    Ok(())
}

impl RunConfig {
    /// Flags first, then the file, then defaults.
    pub fn resolve(command: Command, opts: &Opts) -> Result<Self> {
        let file = match &opts.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        macro_rules! pick {
            ($f:ident) => {
                opts.$f.clone().or(file.$f.clone())
            };
        }
        let lattice = resolve_lattice(pick!(lattice).as_deref().unwrap_or("D1Q3"))?;
        let active = |axis: usize| if axis < lattice.dims { 2 } else { 1 };
        let svd = match (pick!(svd_collision), pick!(svd_tensor)) {
            (Some(collision), Some(tensor)) => Some(SvdConstants { collision, tensor }),
            (None, None) => SvdConstants::for_lattice(&lattice.name),
            _ => return Err(CliError::Config("--svd-collision and --svd-tensor go together".into())),
        };
        let rc = Self {
            command,
            nx: pick!(nx).unwrap_or(2),
            ny: pick!(ny).unwrap_or(active(1)),
            nz: pick!(nz).unwrap_or(active(2)),
            nt: pick!(nt).unwrap_or(2),
            alpha: pick!(alpha).unwrap_or(2),
            tau: pick!(tau).unwrap_or(1.0),
            dt: pick!(dt).unwrap_or(0.1),
            eps: pick!(eps).unwrap_or(1e-12),
            tol: pick!(tol).unwrap_or(1e-9),
            r0: pick!(r0).unwrap_or(1.0),
            out: pick!(out).unwrap_or_else(|| PathBuf::from("out")),
            format: pick!(format).unwrap_or(default_format(command)),
            verify_level: pick!(verify_level).unwrap_or_default(),
            max_qubits: pick!(max_qubits).unwrap_or_else(lcnu_circuits::max_qubits),
            stdout: opts.stdout || file.stdout.unwrap_or(false),
            term: pick!(term),
            builder: pick!(builder),
            sweep: pick!(sweep),
            svd,
            lattice,
        };
        rc.validate()?;
        Ok(rc)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v, axis) in [("nx", self.nx, 0), ("ny", self.ny, 1), ("nz", self.nz, 2)] {
            power_of_two(name, v, 1)?;
            if axis >= self.lattice.dims && v != 1 {
                return Err(CliError::Config(format!("{name} must be 1 for a {}-D lattice", self.lattice.dims)));
            }
        }
        power_of_two("nt", self.nt, 2)?;
        if self.alpha < 2 {
            return Err(CliError::Config(format!("alpha = {} is too small for the cubic LBE system (need >= 2)", self.alpha)));
        }
        for (name, v) in [("tau", self.tau), ("dt", self.dt), ("tol", self.tol), ("r0", self.r0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(CliError::Config(format!("eps = {} must lie in (0, 1)", self.eps)));
        }
        if !allowed_formats(self.command).contains(&self.format) {
            return Err(CliError::Config(format!("format {:?} is not available for this command", self.format)));
        }
        if self.sweep == Some(0) {
            return Err(CliError::Config("sweep needs at least one size".into()));
        }
        Ok(())
    }

    pub fn lbe_config(&self) -> Result<LbeConfig> {
        let mut c = LbeConfig::new(self.lattice.clone(), self.nx, self.ny, self.nz, self.tau)?;
        c.r0 = self.r0;
        Ok(c)
    }

    /// `log2(Q n)`.
    pub fn qn(&self) -> u32 {
        (self.lattice.q() * self.nx * self.ny * self.nz).trailing_zeros()
    }

    /// Qubits of the padded system `L^(e)`.
    pub fn system_qubits(&self) -> u32 {
        self.alpha as u32 * self.qn() + 1 + self.nt.trailing_zeros()
    }

    pub fn lattice_name(&self) -> &str {
        &self.lattice.name
    }
}
