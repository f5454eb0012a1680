//! Per-iteration VQLS circuit counts.

use serde::Serialize;

use lcnu_lbe::Lambda;

use crate::closed::{nlin_term_cost, published_vqls_max};
use crate::params::{term_count, CostParams};
use crate::select::term_shapes;
use crate::table::GateCostTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VqlsEstimate {
    /// `n_q = log(2 n_t (Qn)^alpha)`.
    pub n_q: u32,
    /// `N_s^2 (n_q + 1)` Hadamard-test circuits.
    pub circuit_count: u64,
    /// Largest controlled term cost over the catalog.
    pub max_cost: u64,
    pub argmax: Lambda,
    /// Exact cost of the tuple `(k, i, j, l) = (3, 2, alpha-2, alpha-3)`; needs `alpha >= 3`.
    pub cost_at_published_tuple: Option<i128>,
    /// The published closed form for the maximum; needs `alpha >= 3`.
    pub published_max: Option<i128>,
}

pub fn circuit_count(n_s: u64, n_q: u32) -> u64 {
    n_s * n_s * (n_q as u64 + 1)
}

pub fn vqls_estimate(p: &CostParams, table: &GateCostTable) -> VqlsEstimate {
    let n_q = p.system_qubits();
    let n_s = term_count(&p.counts, p.alpha);
    let (mut best, mut argmax) = (0u64, Lambda::L1 { index: 1 });
    for s in term_shapes(p) {
        let c = s.cost(table).total();
        if c > best {
            best = c;
            argmax = s.lambda;
        }
    }
    let deep = p.alpha >= 3;
    VqlsEstimate {
        n_q,
        circuit_count: circuit_count(n_s, n_q),
        max_cost: best,
        argmax,
        cost_at_published_tuple: deep.then(|| nlin_term_cost(p, table, 3, 2, p.alpha - 2, p.alpha - 3)),
        published_max: deep.then(|| published_vqls_max(p, table)),
    }
}
