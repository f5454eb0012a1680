//! Resource reports and their JSON / CSV forms.

use std::io::Write;

use serde::Serialize;

use crate::closed::{exact_forms, leading_term, published_forms, to_f64, ExactForms};
use crate::error::{ResourceError, Result};
use crate::params::{term_count, CostParams};
use crate::prep::prep_cost;
use crate::select::{select_cost_enumerated, SelectCost};
use crate::table::GateCostTable;
use crate::vqls::{vqls_estimate, VqlsEstimate};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportMeta {
    pub lattice: String,
    pub alpha: usize,
    /// Grid sizes as decimal strings (`2^k` once they overflow 128 bits).
    pub nx: String,
    pub ny: String,
    pub nz: String,
    pub nt: String,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PublishedValues {
    pub l1: f64,
    pub lin1: f64,
    pub lin2: f64,
    pub nlin: f64,
    pub select: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceReport {
    pub meta: ReportMeta,
    pub n_s: u64,
    pub select: SelectCost,
    pub select_total: u64,
    /// Order-of-magnitude estimate with unit constant.
    pub prep_estimate: u64,
    pub exact: ExactForms,
    pub published: PublishedValues,
    pub leading_term: f64,
    pub vqls: VqlsEstimate,
}

impl ResourceReport {
    pub fn total(&self) -> u64 {
        self.select_total + self.prep_estimate
    }
}

pub fn resource_report(p: &CostParams, table: &GateCostTable, epsilon: f64) -> Result<ResourceReport> {
    p.check()?;
    let select = select_cost_enumerated(p, table);
    let n_s = term_count(&p.counts, p.alpha);
    let pf = published_forms(p, table);
    let side = |x: u32| 1u128.checked_shl(x).map_or(format!("2^{x}"), |v| v.to_string());
    Ok(ResourceReport {
        meta: ReportMeta {
            lattice: p.counts.name.clone(),
            alpha: p.alpha,
            nx: side(p.log_axes[0]),
            ny: side(p.log_axes[1]),
            nz: side(p.log_axes[2]),
            nt: side(p.log_nt),
            epsilon,
        },
        n_s,
        select_total: select.total(),
        select,
        prep_estimate: prep_cost(n_s, epsilon)?,
        exact: exact_forms(p, table),
        published: PublishedValues {
            l1: to_f64(pf.l1),
            lin1: to_f64(pf.lin1),
            lin2: to_f64(pf.lin2),
            nlin: to_f64(pf.nlin),
            select: to_f64(pf.select),
        },
        leading_term: to_f64(leading_term(p)),
        vqls: vqls_estimate(p, table),
    })
}

pub fn write_json<W: Write>(reports: &[ResourceReport], w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, reports).map_err(|e| ResourceError::Io(e.to_string()))
}

pub const CSV_HEADER: [&str; 12] =
    ["lattice", "alpha", "nx", "ny", "nz", "nt", "Ns", "prep_T", "select_T", "leading_term", "vqls_noc", "vqls_maxT"];

/// One row per report with the plotting columns.
pub fn write_csv<W: Write>(reports: &[ResourceReport], w: W) -> Result<()> {
    let io = |e: csv::Error| ResourceError::Io(e.to_string());
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        let m = &r.meta;
        out.write_record([
            m.lattice.clone(),
            m.alpha.to_string(),
            m.nx.clone(),
            m.ny.clone(),
            m.nz.clone(),
            m.nt.clone(),
            r.n_s.to_string(),
            r.prep_estimate.to_string(),
            r.select_total.to_string(),
            format!("{}", r.leading_term),
            r.vqls.circuit_count.to_string(),
            r.vqls.max_cost.to_string(),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| ResourceError::Io(e.to_string()))
}
