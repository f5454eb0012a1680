//! OpenQASM 3 text export. Opaque gates are declared with empty bodies; their
//! matrices go to a JSON sidecar.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use lcnu_core::Real;

use crate::gate::{Circuit, GateKind};

fn ident(name: &str) -> String {
    let mut s: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    if !s.starts_with(|c: char| c.is_ascii_alphabetic()) {
        s.insert_str(0, "g_");
    }
    s
}

/// Opaque gate names used by `c`, keyed by their QASM identifier.
fn opaque_names<T: Real>(c: &Circuit<T>) -> BTreeMap<String, (String, usize, usize)> {
    let mut out = BTreeMap::new();
    for (i, g) in c.gates.iter().enumerate() {
        if let GateKind::Opaque(o) = &g.kind {
            out.entry(ident(&o.name)).or_insert((o.name.clone(), o.wires.len(), i));
        }
    }
    out
}

pub fn to_qasm3<T: Real>(c: &Circuit<T>) -> String {
    let mut s = String::from("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    for (id, (name, k, _)) in opaque_names(c) {
        let args: Vec<String> = (0..k).map(|i| format!("a{i}")).collect();
        let _ = writeln!(s, "// `{name}`: {k}-qubit unitary, matrix in sidecar");
        let _ = writeln!(s, "gate {id} {} {{ }}", args.join(", "));
    }
    let _ = writeln!(s, "qubit[{}] q;", c.n_qubits);
    if c.global_scale != T::one() {
        let _ = writeln!(s, "// global scale {:e}", c.global_scale.to_f64().unwrap_or(f64::NAN));
    }
    for g in &c.gates {
        let mut line = String::new();
        for ctl in &g.controls {
            line.push_str(if ctl.open { "negctrl @ " } else { "ctrl @ " });
        }
        let (op, targets) = match &g.kind {
            GateKind::X(w) => ("x".to_string(), vec![*w]),
            GateKind::Y(w) => ("y".to_string(), vec![*w]),
            GateKind::Z(w) => ("z".to_string(), vec![*w]),
            GateKind::H(w) => ("h".to_string(), vec![*w]),
            GateKind::Swap(a, b) => ("swap".to_string(), vec![*a, *b]),
            GateKind::Opaque(o) => (ident(&o.name), o.wires.clone()),
        };
        line.push_str(&op);
        let args: Vec<String> = g.controls.iter().map(|c| c.wire).chain(targets).map(|w| format!("q[{w}]")).collect();
        let _ = writeln!(s, "{line} {};", args.join(", "));
    }
    s
}

/// `{identifier: {name, qubits, matrix: [[[re, im], ...], ...]}}` for every opaque gate.
pub fn opaque_sidecar<T: Real>(c: &Circuit<T>) -> Value {
    let mut out = serde_json::Map::new();
    for (id, (name, k, i)) in opaque_names(c) {
        let GateKind::Opaque(o) = &c.gates[i].kind else { unreachable!() };
        let d = 1usize << k;
        let dense = o.unitary.to_dense();
        let rows: Vec<Value> = (0..d)
            .map(|r| {
                Value::Array(
                    (0..d)
                        .map(|col| {
                            let v = dense[r * d + col];
                            json!([v.re.to_f64().unwrap_or(f64::NAN), v.im.to_f64().unwrap_or(f64::NAN)])
                        })
                        .collect(),
                )
            })
            .collect();
        out.insert(id, json!({ "name": name, "qubits": k, "matrix": rows }));
    }
    Value::Object(out)
}
