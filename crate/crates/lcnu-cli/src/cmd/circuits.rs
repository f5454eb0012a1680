use std::fmt::Write as _;

use serde_json::{json, Value};

use lcnu_circuits::{
    circuit_b2q, circuit_b3q, circuit_commutation, circuit_incrementer, circuit_m, circuit_pk, compile_term,
    opaque_sidecar, to_qasm3, Circuit64,
};
use lcnu_core::embed_term;

use super::catalog;
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{progress, Sink};

/// Builder circuit sized from the configured lattice and grid.
pub fn named_builder(rc: &RunConfig, spec: &str) -> Result<Circuit64> {
    let (name, q) = match spec.split_once(':') {
        Some((n, q)) => (n, q.parse::<u32>().map_err(|_| CliError::Config(format!("bad velocity index in `{spec}`")))?),
        None => (spec, 1),
    };
    let big_q = rc.lattice.q() as u128;
    let n = (rc.nx * rc.ny * rc.nz) as u128;
    let qn = big_q * n;
    let c = match name {
        "pk2" => circuit_pk(2, qn),
        "pk3" => circuit_pk(3, qn),
        "m" => circuit_m(qn, n),
        "b2q" => circuit_b2q(q, big_q, n),
        "b3q" => circuit_b3q(q, big_q, n),
        "commutation" => circuit_commutation(qn, qn),
        "incrementer" => circuit_incrementer(rc.nx as u128, false),
        other => return Err(CliError::Config(format!("unknown builder `{other}`"))),
    };
    c.map_err(|e| CliError::Config(e.to_string()))
}

pub fn circuits(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    if let Some(spec) = &rc.builder {
        let c = named_builder(rc, spec)?;
        sink.primary(&format!("{}.qasm", spec.replace(':', "_")), to_qasm3(&c).as_bytes())?;
        return Ok(json!({"command": "circuits", "builder": spec, "qubits": c.n_qubits, "gates": c.len()}));
    }
    let (_, _, cat) = catalog(rc)?;
    let picks: Vec<usize> = match rc.term {
        Some(i) if i < cat.len() => vec![i],
        Some(i) => return Err(CliError::Config(format!("term {i} outside 0..{}", cat.len()))),
        None => (0..cat.len()).collect(),
    };
    progress("circuits", format!("compiling {} term(s)", picks.len()));
    let mut joined = String::new();
    for &i in &picks {
        let e = &cat.entries[i];
        let c = compile_term(&embed_term(&e.term)?)?;
        let text = to_qasm3(&c);
        let side = opaque_sidecar(&c);
        if sink.stdout {
            let _ = writeln!(joined, "// term {i} {}", serde_json::to_string(&e.lambda)?);
            joined.push_str(&text);
        } else {
            sink.secondary(&format!("term_{i:05}.qasm"), text.as_bytes())?;
            if side.as_object().is_some_and(|o| !o.is_empty()) {
                let mut b = serde_json::to_vec_pretty(&side)?;
                b.push(b'\n');
                sink.secondary(&format!("term_{i:05}.opaque.json"), &b)?;
            }
        }
    }
    if sink.stdout {
        sink.primary("terms.qasm", joined.as_bytes())?;
    }
    Ok(json!({"command": "circuits", "terms": picks.len()}))
}
