use serde::Serialize;
use serde_json::{json, Value};

use lcnu_core::{write_matrix_market, TermLabel};
use lcnu_lbe::expected_catalog_size;

use super::{assemble, catalog, json_bytes, SizeMeta};
use crate::config::RunConfig;
use crate::error::Result;
use crate::output::{progress, Sink};

pub fn build(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    progress("build", format!("assembling {} qubits", rc.system_qubits()));
    let a = assemble(rc)?;
    let mut mm = Vec::new();
    write_matrix_market(&a.padded.l_e, &mut mm)?;
    sink.primary("Le.mtx", &mm)?;
    let mut layout = a.padded.layout_json().into_bytes();
    layout.push(b'\n');
    sink.secondary("layout.json", &layout)?;
    Ok(json!({
        "command": "build",
        "qubits": a.padded.qubits(),
        "rows": a.padded.l_e.nrows(),
        "nnz": a.padded.l_e.nnz(),
        "carleman_dim": a.sys.a.nrows(),
    }))
}

#[derive(Serialize)]
struct DecomposeSummary {
    #[serde(flatten)]
    meta: SizeMeta,
    qubits: u32,
    n_s: usize,
    expected_n_s: usize,
    l1: usize,
    lin1: usize,
    lin2: usize,
    nlin: usize,
    n_e: [usize; 3],
    n_r: usize,
    n_gamma: usize,
}

pub fn decompose(rc: &RunConfig, sink: &mut Sink) -> Result<Value> {
    progress("decompose", "computing sub-decompositions");
    let (_, sub, cat) = catalog(rc)?;
    progress("decompose", format!("{} terms", cat.len()));
    let mut lines = Vec::new();
    cat.write_jsonl(&mut lines)?;
    sink.primary("terms.jsonl", &lines)?;
    let summary = DecomposeSummary {
        meta: SizeMeta::of(rc),
        qubits: cat.qubits,
        n_s: cat.len(),
        expected_n_s: expected_catalog_size(&sub, rc.alpha),
        l1: cat.count(TermLabel::L1),
        lin1: cat.count(TermLabel::Lin1),
        lin2: cat.count(TermLabel::Lin2),
        nlin: cat.count(TermLabel::Nlin),
        n_e: [sub.n_e(0), sub.n_e(1), sub.n_e(2)],
        n_r: sub.n_r(),
        n_gamma: sub.n_gamma(),
    };
    sink.secondary("summary.json", &json_bytes(&summary)?)?;
    Ok(serde_json::to_value(&summary)?)
}
