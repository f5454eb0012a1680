use serde::Serialize;
use serde_json::{json, Value};

use lcnu_lbe::{compute_subdecompositions, LbeConfig};
use lcnu_resources::{
    pauli_term_count, resource_report, write_csv, write_json, CostParams, GateCostTable, LatticeCounts,
    PAULI_MAX_QUBITS,
};

use super::{assemble, catalog, json_bytes, SizeMeta};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{progress, Sink};

fn log2(v: usize) -> u32 {
    v.trailing_zeros()
}

pub fn estimate(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    let svd = rc.svd.ok_or_else(|| {
        CliError::Config(format!("no SVD T constants for `{}`; pass --svd-collision and --svd-tensor", rc.lattice_name()))
    })?;
    let table = GateCostTable::new(svd);
    let minimal = LbeConfig::minimal(rc.lattice.clone(), rc.tau)?;
    let counts = LatticeCounts::from_subdecompositions(&minimal, &compute_subdecompositions(&minimal)?);
    let params: Vec<CostParams> = match rc.sweep {
        Some(k) => (1..=k).map(|lx| CostParams::cubic(counts.clone(), rc.alpha, lx)).collect::<lcnu_resources::Result<_>>()?,
        None => vec![CostParams::new(counts, rc.alpha, log2(rc.nt), [log2(rc.nx), log2(rc.ny), log2(rc.nz)])?],
    };
    progress("estimate", format!("{} size(s)", params.len()));
    let reports = params.iter().map(|p| resource_report(p, &table, rc.eps)).collect::<lcnu_resources::Result<Vec<_>>>()?;
    let mut buf = Vec::new();
    match rc.format {
        Format::Json => {
            write_json(&reports, &mut buf)?;
            sink.primary("estimate.json", &buf)?;
        }
        _ => {
            write_csv(&reports, &mut buf)?;
            sink.primary("estimate.csv", &buf)?;
        }
    }
    let last = reports.last().expect("at least one size");
    Ok(json!({"command": "estimate", "rows": reports.len(), "n_s": last.n_s, "select_total": last.select_total}))
}

#[derive(Serialize)]
struct PauliReport {
    #[serde(flatten)]
    meta: SizeMeta,
    qubits: u32,
    tol: f64,
    pauli_count: usize,
    n_s: usize,
    ratio: f64,
}

pub fn pauli_compare(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    let qubits = rc.system_qubits();
    let cap = rc.max_qubits.min(PAULI_MAX_QUBITS);
    if qubits > cap {
        return Err(CliError::Cap(format!("Pauli transform on {qubits} qubits exceeds the cap {cap}")));
    }
    let (_, _, cat) = catalog(rc)?;
    let a = assemble(rc)?;
    progress("pauli-compare", format!("transforming a {qubits}-qubit matrix"));
    let count = pauli_term_count(&a.padded.l_e, rc.tol, true)?;
    let report = PauliReport {
        meta: SizeMeta::of(rc),
        qubits,
        tol: rc.tol,
        pauli_count: count,
        n_s: cat.len(),
        ratio: count as f64 / cat.len() as f64,
    };
    sink.primary("pauli.json", &json_bytes(&report)?)?;
    Ok(json!({"command": "pauli-compare", "pauli_count": count, "n_s": cat.len()}))
}
