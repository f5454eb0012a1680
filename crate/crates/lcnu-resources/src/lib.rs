//! T-gate accounting for the block encoding of the Carleman-linearized
//! lattice Boltzmann matrix: a controlled-gate cost table, per-term costs,
//! SELECT sums (term by term and in closed form), a PREP estimate, VQLS
//! circuit counts and a Pauli-string baseline.
//!
//! Costs are exact integers. A term `L_l` with Gram weight `T` costs
//! `G[C^{T+1} X] + G[C Lbar_l]` once controlled, and the SELECT oracle adds
//! `14 N_s (ceil(log N_s) - 1)` to widen the control to the index register.

pub mod closed;
pub mod error;
pub mod params;
pub mod pauli;
pub mod prep;
pub mod report;
pub mod select;
pub mod table;
pub mod term;
pub mod vqls;

pub use closed::{exact_forms, leading_term, nlin_term_cost, published_forms, published_vqls_max, ExactForms, PublishedForms};
pub use error::{ResourceError, Result};
pub use params::{term_count, CostParams, LatticeCounts};
pub use pauli::{pauli_term_count, PAULI_DEFAULT_QUBITS, PAULI_MAX_QUBITS};
pub use prep::prep_cost;
pub use report::{resource_report, write_csv, write_json, ResourceReport, CSV_HEADER};
pub use select::{
    ceil_log2, select_cost_catalog, select_cost_enumerated, select_overhead, term_shapes, GroupCost, SelectCost,
    TermShape,
};
pub use table::{factor_item, CostItem, GateCostTable, SvdConstants};
pub use term::{t_cost_entry, t_cost_term, TermCost};
pub use vqls::{circuit_count, vqls_estimate, VqlsEstimate};

/// Exact rational used by the closed forms.
pub type Rational = closed::Q;
