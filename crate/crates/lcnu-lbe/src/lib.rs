//! Lattice Boltzmann front-end: velocity sets, BGK collision coefficients,
//! the cubic ODE `df/dt = F_1 f + F_2 f^(x)2 + F_3 f^(x)3`, SVD/Pauli
//! sub-decompositions and the full catalog of LCNU terms of the padded
//! Carleman system.

pub mod catalog;
pub mod collision;
pub mod config;
pub mod error;
pub mod lattice;
pub mod operators;
pub mod subdec;
pub mod terms;

pub use catalog::{enumerate_terms, expected_catalog_size, CatalogEntry, Lambda, TermCatalog};
pub use collision::{collision_coeffs, CollisionCoefficients};
pub use config::{GammaFill, LbeConfig};
pub use error::{LbeError, Result};
pub use lattice::{builtin_lattice, embed_lattice, padded_builtin, LatticeSpec};
pub use operators::{
    b2_matrix, b3_matrix, f1_matrix, f2_matrix, f3_matrix, gamma_matrix, lbe_ode, r_matrix, streaming_matrix,
    velocity_matrix,
};
pub use subdec::{compute_subdecompositions, svd, SubDecompositions, SvdDecomposition, PAULI_TOL};
pub use terms::{build_f1, build_f2, build_f3, lbe_fterms, materialize_sum, Axis, FSource, LbeFTerms, SourcedTerm};
