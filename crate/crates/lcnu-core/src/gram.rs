//! Symbolic Gram signatures `L L^dagger` of product terms.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::factor::{BasisFactor, Pauli, Rho};
use crate::scalar::Real;
use crate::term::TermExpr;

/// Largest non-affine factor whose Gram action is decided by a dense check.
pub const DENSE_GRAM_LIMIT: u32 = 10;

/// Per-qubit slot of a Gram pattern: `Zero` is `rho0`, `One` is `rho3`, `Free` is `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Zero,
    One,
    Free,
}

/// `L L^dagger = scale * (rho/I pattern)`. Pattern is in Kronecker order, so
/// position 0 is the most significant qubit of the term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramSignature<T> {
    pub pattern: Vec<Slot>,
    pub scale: T,
}

impl<T: Real> GramSignature<T> {
    /// Number of constrained qubits.
    pub fn t_count(&self) -> usize {
        self.pattern.iter().filter(|s| **s != Slot::Free).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.scale == T::zero()
    }

    /// Compact string such as `"0F1"`.
    pub fn pattern_string(&self) -> String {
        self.pattern
            .iter()
            .map(|s| match s {
                Slot::Zero => '0',
                Slot::One => '1',
                Slot::Free => 'F',
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GramOutcome<T> {
    InR(GramSignature<T>),
    /// The partial Gram product left the set at this factor.
    NotInR { layer: usize, factor: usize },
}

impl<T: Real> GramOutcome<T> {
    pub fn into_signature(self) -> Result<GramSignature<T>> {
        match self {
            GramOutcome::InR(g) => Ok(g),
            GramOutcome::NotInR { layer, factor } => Err(CoreError::NotInR { layer, factor }),
        }
    }
}

enum Step {
    Ok,
    Zero,
    Leave,
}

fn rho_rule(r: Rho, s: &mut Slot) -> Step {
    // rho_{ij} |k><k| rho_{ij}^dagger = delta_{jk} |i><i|
    let need_col = r.col();
    let ok = match *s {
        Slot::Free => true,
        Slot::Zero => need_col == 0,
        Slot::One => need_col == 1,
    };
    if !ok {
        return Step::Zero;
    }
    *s = if r.row() == 0 { Slot::Zero } else { Slot::One };
    Step::Ok
}

fn factor_rule<T: Real>(f: &BasisFactor<T>, sub: &mut [Slot]) -> Result<Step> {
    match f {
        BasisFactor::Identity(_) | BasisFactor::Pauli(Pauli::Z) => Ok(Step::Ok),
        BasisFactor::Pauli(_) => {
            sub[0] = match sub[0] {
                Slot::Zero => Slot::One,
                Slot::One => Slot::Zero,
                Slot::Free => Slot::Free,
            };
            Ok(Step::Ok)
        }
        BasisFactor::Rho(r) => Ok(rho_rule(*r, &mut sub[0])),
        _ if sub.iter().all(|s| *s == Slot::Free) => Ok(Step::Ok),
        BasisFactor::Permutation(p) if p.affine().is_some() => {
            match p.affine().unwrap().image_of_subcube(sub) {
                Some(img) => {
                    sub.copy_from_slice(&img);
                    Ok(Step::Ok)
                }
                None => Ok(Step::Leave),
            }
        }
        _ => dense_rule(f, sub),
    }
}

/// Conjugates the local subcube projector by a small factor and checks the
/// result is again a subcube projector.
fn dense_rule<T: Real>(f: &BasisFactor<T>, sub: &mut [Slot]) -> Result<Step> {
    let q = f.qubits();
    if q > DENSE_GRAM_LIMIT {
        return Err(CoreError::Undecidable(f.label()));
    }
    let u = f.materialize()?;
    let n = 1usize << q;
    let diag: Vec<_> = (0..n)
        .map(|x| {
            let inside = sub.iter().enumerate().all(|(p, s)| {
                let b = (x >> (q as usize - 1 - p)) & 1;
                match s {
                    Slot::Free => true,
                    Slot::Zero => b == 0,
                    Slot::One => b == 1,
                }
            });
            (x, x, if inside { crate::scalar::cone::<T>() } else { crate::scalar::czero::<T>() })
        })
        .collect();
    let r = crate::sparse::SparseComplexMatrix::from_triplets(n, n, diag)?;
    let img = u.matmul(&r)?.matmul(&u.adjoint())?;
    let tol = T::lit(1e-10);
    let mut support = Vec::new();
    for (i, j, v) in img.triplets() {
        if v.norm() <= tol {
            continue;
        }
        if i != j || (v.re - T::one()).abs() > tol || v.im.abs() > tol {
            return Ok(Step::Leave);
        }
        support.push(i);
    }
    if support.is_empty() {
        return Ok(Step::Zero);
    }
    // the support must be a subcube: fixed bits agree across all members and
    // the member count equals 2^(free bits)
    let and = support.iter().fold(usize::MAX, |a, &x| a & x);
    let or = support.iter().fold(0usize, |a, &x| a | x);
    let free = (and ^ or).count_ones();
    if support.len() != 1usize << free {
        return Ok(Step::Leave);
    }
    for (p, s) in sub.iter_mut().enumerate() {
        let bit = q as usize - 1 - p;
        *s = if (and ^ or) >> bit & 1 == 1 {
            Slot::Free
        } else if and >> bit & 1 == 1 {
            Slot::One
        } else {
            Slot::Zero
        };
    }
    Ok(Step::Ok)
}

/// Computes the Gram signature of the factor product of `term` (the scalar
/// coefficient is ignored). Layers are processed right to left.
pub fn gram_signature<T: Real>(term: &TermExpr<T>) -> Result<GramOutcome<T>> {
    let q = term.qubits() as usize;
    let mut pattern = vec![Slot::Free; q];
    for (li, layer) in term.layers.iter().enumerate().rev() {
        // a vanishing factor zeroes the whole layer even if another factor left the set
        let mut off = 0usize;
        let mut left = None;
        for (fi, f) in layer.iter().enumerate() {
            let k = f.qubits() as usize;
            match factor_rule(f, &mut pattern[off..off + k])? {
                Step::Ok => {}
                Step::Zero => return Ok(GramOutcome::InR(GramSignature { pattern, scale: T::zero() })),
                Step::Leave => {
                    left.get_or_insert(fi);
                }
            }
            off += k;
        }
        if let Some(fi) = left {
            return Ok(GramOutcome::NotInR { layer: li, factor: fi });
        }
    }
    Ok(GramOutcome::InR(GramSignature { pattern, scale: T::one() }))
}
