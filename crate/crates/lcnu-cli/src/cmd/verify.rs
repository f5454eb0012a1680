use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use lcnu_circuits::{compile_term, simulate};
use lcnu_core::{embed_term, unitary_block, validate_lcnu, Term};
use lcnu_lbe::Lambda;

use super::{assemble, catalog, json_bytes, SizeMeta};
use crate::config::{RunConfig, VerifyLevel};
use crate::error::{CliError, Result};
use crate::output::{progress, Sink};

/// Max-norm distance between a compiled term circuit and its embedding unitary.
pub fn circuit_deviation(term: &Term) -> Result<f64> {
    let e = embed_term(term)?;
    let c = compile_term(&e)?;
    let sim = simulate(&c)?;
    Ok(sim.max_abs_diff(&unitary_block(&e)?)?)
}

/// Indices checked at `level` out of `n` terms.
pub fn selected_terms(level: VerifyLevel, n: usize) -> Vec<usize> {
    match level {
        VerifyLevel::Off => Vec::new(),
        VerifyLevel::Exhaustive => (0..n).collect(),
        VerifyLevel::Sampled => {
            let step = (n / 24).max(1);
            let mut v: Vec<usize> = (0..n).step_by(step).collect();
            if n > 0 && v.last() != Some(&(n - 1)) {
                v.push(n - 1);
            }
            v
        }
    }
}

#[derive(Serialize)]
struct Failure {
    index: usize,
    lambda: Lambda,
    deviation: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    meta: SizeMeta,
    n_s: usize,
    residual: f64,
    tol: f64,
    level: VerifyLevel,
    circuits_checked: usize,
    max_circuit_deviation: f64,
    failures: Vec<Failure>,
    pass: bool,
}

pub fn verify(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    let (_, _, cat) = catalog(rc)?;
    let a = assemble(rc)?;
    progress("verify", format!("reconstructing {} terms", cat.len()));
    let residual = validate_lcnu(&cat.decomposition()?, &a.padded.l_e)?;
    if residual > rc.tol {
        eprintln!("{}", json!({"check": "reconstruction", "residual": residual, "tol": rc.tol}));
    }
    let picks = selected_terms(rc.verify_level, cat.len());
    if !picks.is_empty() && cat.qubits + 1 > rc.max_qubits {
        return Err(CliError::Cap(format!(
            "term circuits need {} qubits, above the simulation cap {}",
            cat.qubits + 1,
            rc.max_qubits
        )));
    }
    progress("verify", format!("simulating {} term circuits", picks.len()));
    let devs: Vec<(usize, Result<f64>)> = picks.par_iter().map(|&i| (i, circuit_deviation(&cat.entries[i].term))).collect();
    let mut failures = Vec::new();
    let mut max_dev: f64 = 0.0;
    for (i, d) in devs {
        let d = d.map_err(|e| {
            eprintln!("{}", json!({"check": "circuit", "index": i, "lambda": cat.entries[i].lambda, "error": e.to_string()}));
            e
        })?;
        max_dev = max_dev.max(d);
        if d > rc.tol {
            failures.push(Failure { index: i, lambda: cat.entries[i].lambda, deviation: d });
        }
    }
    if let Some(f) = failures.first() {
        eprintln!("{}", json!({"check": "circuit", "index": f.index, "lambda": f.lambda, "deviation": f.deviation, "tol": rc.tol}));
    }
    let pass = residual <= rc.tol && failures.is_empty();
    let report = VerifyReport {
        meta: SizeMeta::of(rc),
        n_s: cat.len(),
        residual,
        tol: rc.tol,
        level: rc.verify_level,
        circuits_checked: picks.len(),
        max_circuit_deviation: max_dev,
        failures,
        pass,
    };
    sink.primary("verify.json", &json_bytes(&report)?)?;
    if !pass {
        return Err(CliError::Verify(format!(
            "residual {residual:e}, {} circuit(s) beyond tolerance {:e}",
            report.failures.len(),
            rc.tol
        )));
    }
    Ok(json!({"command": "verify", "residual": residual, "circuits_checked": report.circuits_checked, "pass": true}))
}
