use std::fmt::Write as _;

use serde_json::{json, Value};

use lcnu_analysis::{classical_solve_compare, condition_report, write_condition_csv, SolveConfig, DENSE_CAP};
use lcnu_carleman::CarlemanConfig;
use lcnu_core::C64;
use lcnu_lbe::lbe_ode;

use super::json_bytes;
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{progress, Sink};

fn block_dim(rc: &RunConfig) -> usize {
    2usize << (rc.alpha as u32 * rc.qn())
}

pub fn condition(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    let rows = block_dim(rc) * rc.nt;
    if rows > DENSE_CAP {
        return Err(CliError::Cap(format!("dense SVD of dimension {rows} exceeds the cap {DENSE_CAP}")));
    }
    let lbe = rc.lbe_config()?;
    let ode = lbe_ode(&lbe)?;
    let cfg = CarlemanConfig::new(rc.alpha, rc.nt, rc.dt)?;
    progress("condition", format!("dense SVD at dimension {rows}"));
    let mut r = condition_report(&ode, &cfg, rc.r0)?;
    r.label = rc.lattice_name().to_string();
    match rc.format {
        Format::Json => sink.primary("condition.json", &json_bytes(&r)?)?,
        _ => {
            let mut buf = Vec::new();
            write_condition_csv(&mut buf, std::slice::from_ref(&r))?;
            sink.primary("condition.csv", &buf)?;
        }
    }
    Ok(json!({"command": "condition", "ratio": r.ratio, "bound": r.bound, "assumption_ok": r.assumption_ok}))
}

/// Lattice weights with a small cosine ripple along x.
pub fn ripple_state(rc: &RunConfig) -> Vec<C64> {
    let q = rc.lattice.q();
    let n = q * rc.nx * rc.ny * rc.nz;
    (0..n)
        .map(|i| {
            let (site, m) = (i / q, i % q);
            let ix = site % rc.nx;
            let w = if m < rc.lattice.weights.len() { rc.lattice.weight(m) } else { 0.0 };
            let phase = 2.0 * std::f64::consts::PI * ix as f64 / rc.nx as f64;
            C64::new(w * (1.0 + 0.05 * phase.cos()), 0.0)
        })
        .collect()
}

pub fn solve(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    let block = block_dim(rc);
    if block > DENSE_CAP {
        return Err(CliError::Cap(format!("time block of dimension {block} exceeds the dense cap {DENSE_CAP}")));
    }
    let lbe = rc.lbe_config()?;
    let ode = lbe_ode(&lbe)?;
    let alphas: Vec<usize> = (2..=rc.alpha).collect();
    progress("solve", format!("orders {alphas:?}"));
    let rep = classical_solve_compare(&ode, &SolveConfig::new(rc.nt, rc.dt), &alphas, &ripple_state(rc))?;
    match rc.format {
        Format::Csv => {
            let mut s = String::from("alpha,max_error,final_error,padded_max,residual\n");
            for r in &rep.rows {
                let _ = writeln!(s, "{},{},{},{},{}", r.alpha, r.max_error, r.final_error, r.padded_max, r.residual);
            }
            sink.primary("solve.csv", s.as_bytes())?;
        }
        _ => sink.primary("solve.json", &json_bytes(&rep)?)?,
    }
    let errs: Vec<f64> = rep.rows.iter().map(|r| r.max_error).collect();
    Ok(json!({"command": "solve", "max_error": errs}))
}
