//! Numerical side checks of the Carleman linear system: condition numbers
//! of `L` and its zero-padded form `L^(e)` against the analytic ratio
//! bound, and direct classical solves compared with an explicit reference
//! integration of the underlying polynomial ODE.
//!
//! Dense work is done in `f64` regardless of the input scalar and is capped
//! at [`DENSE_CAP`] rows.

pub mod beta;
pub mod condition;
pub mod dense;
pub mod error;
pub mod solve;

pub use beta::{beta_params, BetaParams};
pub use condition::{
    condition_from_system, condition_report, condition_sweep, ratio_bound, write_condition_csv, ConditionCase,
    ConditionReport, B_READING, CONDITION_CSV_HEADER,
};
pub use dense::{
    extreme_singular_values, lambda_max_hermitian_part, singular_values, spectral_norm, to_dense, v_matrix,
    v_norms_exact, v_norms_published, DENSE_CAP,
};
pub use error::{AnalysisError, Result};
pub use solve::{
    block_forward_solve, classical_solve_compare, padding_indices, rk4_reference, solve_padded, trajectory,
    SolveConfig, SolveReport, SolveRow,
};

pub type ConditionReport64 = ConditionReport<f64>;
pub type SolveReport64 = SolveReport<f64>;
pub type BetaParams64 = BetaParams<f64>;
