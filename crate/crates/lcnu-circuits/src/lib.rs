//! Gate-level circuits for the structured permutations, the two-stage
//! embedding of LCNU terms, a sparse desk-scale simulator and OpenQASM 3 export.

pub mod builders;
pub mod compile;
pub mod error;
pub mod gate;
pub mod qasm;
pub mod simulate;

pub use builders::{
    circuit_b2q, circuit_b3q, circuit_commutation, circuit_incrementer, circuit_ladder, circuit_m, circuit_pk,
    circuit_xstring, incrementer_qubits, lower_factor,
};
pub use compile::compile_term;
pub use error::{CircuitError, Result};
pub use gate::{add_control, Block, BlockKind, Circuit, Control, Gate, GateKind, OpaqueGate};
pub use qasm::{opaque_sidecar, to_qasm3};
pub use simulate::{max_qubits, permutation_map, run_basis, simulate, DEFAULT_MAX_QUBITS};

pub type Circuit64 = Circuit<f64>;
pub type Gate64 = Gate<f64>;
