//! Unitary completion and block embedding of a term.

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::factor::BasisFactor;
use crate::gram::{gram_signature, GramSignature};
use crate::scalar::Real;
use crate::sparse::SparseComplexMatrix;
use crate::term::TermExpr;

/// Replaces every rho factor by its unitary completion and drops the
/// coefficient. Fails for terms that vanish identically.
pub fn complete_term<T: Real>(term: &TermExpr<T>) -> Result<TermExpr<T>> {
    if term.coeff.norm() == T::zero() {
        return Err(CoreError::Trivial);
    }
    if let crate::gram::GramOutcome::InR(g) = gram_signature(term)? {
        if g.is_trivial() {
            return Err(CoreError::Trivial);
        }
    }
    let layers = term.layers.iter().map(|l| l.iter().map(BasisFactor::completion).collect()).collect();
    TermExpr::new(Complex::new(T::one(), T::zero()), layers)
}

/// A term together with the data of its two-stage unitary embedding:
/// `U = U1 U2` with `U1` a single multi-controlled X on the ancilla
/// (controls from the Gram pattern) and `U2 = X (x) Lbar`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedTerm<T> {
    pub source: TermExpr<T>,
    pub u1_controls: GramSignature<T>,
    pub u2_completion: TermExpr<T>,
}

pub fn embed_term<T: Real>(term: &TermExpr<T>) -> Result<EmbeddedTerm<T>> {
    let gram = gram_signature(term)?.into_signature()?;
    if gram.is_trivial() {
        return Err(CoreError::Trivial);
    }
    Ok(EmbeddedTerm { source: term.clone(), u1_controls: gram, u2_completion: complete_term(term)? })
}

impl<T: Real> EmbeddedTerm<T> {
    pub fn qubits(&self) -> u32 {
        self.source.qubits()
    }

    /// Projector `L L^dagger` rebuilt from the stored pattern.
    pub fn gram_projector(&self) -> Result<SparseComplexMatrix<T>> {
        let factors = self.u1_controls.pattern.iter().map(|s| match s {
            crate::gram::Slot::Zero => BasisFactor::Rho(crate::factor::Rho::R0),
            crate::gram::Slot::One => BasisFactor::Rho(crate::factor::Rho::R3),
            crate::gram::Slot::Free => BasisFactor::Identity(1),
        });
        TermExpr::kron(Complex::new(T::one(), T::zero()), factors.collect()).materialize()
    }

    /// `[[I - P, P], [P, I - P]]` with the ancilla as the most significant qubit.
    pub fn u1_matrix(&self) -> Result<SparseComplexMatrix<T>> {
        let p = self.gram_projector()?;
        let n = p.nrows();
        let id = SparseComplexMatrix::identity(n);
        let x = BasisFactor::<T>::Pauli(crate::factor::Pauli::X).materialize()?;
        SparseComplexMatrix::identity(2).kron(&id.sub(&p)?).add(&x.kron(&p))
    }

    /// `X (x) Lbar`.
    pub fn u2_matrix(&self) -> Result<SparseComplexMatrix<T>> {
        let x = BasisFactor::<T>::Pauli(crate::factor::Pauli::X).materialize()?;
        Ok(x.kron(&self.u2_completion.materialize()?))
    }
}

/// `[[L, Lbar - L], [Lbar - L, L]]` with `L` the coefficient-free term.
pub fn unitary_block<T: Real>(e: &EmbeddedTerm<T>) -> Result<SparseComplexMatrix<T>> {
    let l = e.source.materialize_operator()?;
    let lbar = e.u2_completion.materialize_operator()?;
    let off = lbar.sub(&l)?;
    let x = BasisFactor::<T>::Pauli(crate::factor::Pauli::X).materialize()?;
    SparseComplexMatrix::identity(2).kron(&l).add(&x.kron(&off))
}
