//! Carleman linearization of polynomial ODEs `df/dt = sum_k F_k f^{(x) k}`,
//! time discretization into one linear system, zero padding to power-of-two
//! blocks and the symbolic LCNU decomposition of the padded matrix.

pub mod decompose;
pub mod error;
pub mod ode;
pub mod padding;

pub use decompose::{
    canonical_unit_matrix, commutation_perm, decompose_ae, decompose_ae_block, decompose_l1e, decompose_le,
    expected_ae_terms, f0_embedded, fk_embedded, pk_factor, pk_target, rho_prefix, unit_matrix_terms,
    AeDecomposition, AeTermIndex, FTerms, Family,
};
pub use error::{CarlemanError, Result};
pub use ode::{
    assemble_carleman, block_start, carleman_dim, initial_state, kron_vec, time_stepping_matrix, transfer_block,
    CarlemanConfig, CarlemanMatrices, PolynomialODE,
};
pub use padding::{block_layout, incrementer_matrix, pad_system, padded_offset, unpadded_offset, PaddedSystem};

/// Unit-matrix sub-decompositions for every block of `ode`, for when no
/// structured decomposition is available.
pub fn unit_fterms<T: lcnu_core::Real>(ode: &PolynomialODE<T>) -> Result<FTerms<T>> {
    let mut f = FTerms::new(ode.qn());
    if let Some(f0) = ode.block(0) {
        f.f0e = unit_matrix_terms(&f0_embedded(f0)?)?;
    }
    if let Some(f1) = ode.block(1) {
        f.f1 = unit_matrix_terms(f1)?;
    }
    for k in 2..=ode.degree() {
        if let Some(fk) = ode.block(k) {
            if fk.nnz() > 0 {
                f.fke.insert(k, unit_matrix_terms(&fk_embedded(fk)?)?);
            }
        }
    }
    Ok(f)
}
