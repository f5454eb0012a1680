//! Symbolic LCNU skeleton of the padded Carleman system.

use std::collections::BTreeMap;

use num_complex::Complex;

use lcnu_core::{
    BasisFactor, LcnuDecomposition, OpExpr, Permutation, Real, Rho, SparseComplexMatrix, TermExpr, TermLabel,
};

use crate::error::{CarlemanError, Result};
use crate::ode::CarlemanConfig;

fn rho<T: Real>(r: Rho) -> BasisFactor<T> {
    BasisFactor::Rho(r)
}

/// Rho string whose materialization is the unit matrix `E_{i,j}` of size `n`.
pub fn canonical_unit_matrix<T: Real>(i: usize, j: usize, n: usize) -> Result<TermExpr<T>> {
    if !n.is_power_of_two() || i >= n || j >= n {
        return Err(CarlemanError::Index(format!("E_({i},{j}) of size {n}")));
    }
    let q = n.trailing_zeros() as usize;
    let factors = (0..q)
        .map(|p| {
            let bit = q - 1 - p;
            rho(Rho::from_bits((i >> bit) & 1 == 1, (j >> bit) & 1 == 1))
        })
        .collect::<Vec<_>>();
    let factors = if factors.is_empty() { vec![BasisFactor::Identity(0)] } else { factors };
    Ok(TermExpr::kron(Complex::new(T::one(), T::zero()), factors))
}

/// One unit-matrix term per stored entry of `m` (square, power-of-two).
pub fn unit_matrix_terms<T: Real>(m: &SparseComplexMatrix<T>) -> Result<Vec<TermExpr<T>>> {
    if m.nrows() != m.ncols() {
        return Err(CarlemanError::Shape(format!("{:?} is not square", m.shape())));
    }
    m.triplets().map(|(r, c, v)| Ok(canonical_unit_matrix(r, c, m.nrows())?.with_coeff(v))).collect()
}

/// `F_0 e_0^T`: the forcing column placed in column 0 of an `N x N` block.
pub fn f0_embedded<T: Real>(f0: &SparseComplexMatrix<T>) -> Result<SparseComplexMatrix<T>> {
    if f0.ncols() != 1 {
        return Err(CarlemanError::Shape("F_0 must be a column".into()));
    }
    Ok(SparseComplexMatrix::from_triplets(f0.nrows(), f0.nrows(), f0.triplets())?)
}

/// `[F_k; 0]`: `F_k` stacked over zeros into an `N^k x N^k` block.
pub fn fk_embedded<T: Real>(fk: &SparseComplexMatrix<T>) -> Result<SparseComplexMatrix<T>> {
    Ok(SparseComplexMatrix::from_triplets(fk.ncols(), fk.ncols(), fk.triplets())?)
}

/// Row index `b = N^{k-1} - sum_{l=0}^{k-2} N^l` of the unit entry `(b, 0)` of `P_k`.
pub fn pk_target(k: u32, n: u128) -> u128 {
    assert!(k >= 2, "P_k is defined for k >= 2");
    n.pow(k - 1) - (0..k - 1).map(|l| n.pow(l)).sum::<u128>()
}

/// `P_k` as an X string on `(k-1) log N` qubits (it is an involution).
pub fn pk_factor<T: Real>(k: u32, qn: u32) -> BasisFactor<T> {
    let b = pk_target(k, 1u128 << qn);
    let p = Permutation { name: format!("P{k}"), ..Permutation::xstring((k - 1) * qn, b) };
    BasisFactor::Permutation(p)
}

/// Commutation matrix `K^(a,b)` for power-of-two `a`, `b`.
pub fn commutation_perm<T: Real>(a: u128, b: u128) -> Result<BasisFactor<T>> {
    if !a.is_power_of_two() || !b.is_power_of_two() {
        return Err(CarlemanError::Index(format!("K^({a},{b}) needs powers of two")));
    }
    Ok(BasisFactor::Permutation(Permutation::commutation(a.trailing_zeros(), b.trailing_zeros())))
}

fn kq<T: Real>(qa: u32, qb: u32) -> OpExpr<T> {
    OpExpr::leaf(BasisFactor::Permutation(Permutation::commutation(qa, qb)))
}

/// `(rho0 (x) rho3^{(x)(qn-1)})^{(x) reps}`: selects the top block of each register.
pub fn rho_prefix<T: Real>(reps: usize, qn: u32) -> Vec<BasisFactor<T>> {
    let mut out = Vec::new();
    for _ in 0..reps {
        out.push(rho(Rho::R0));
        out.extend((1..qn).map(|_| rho(Rho::R3)));
    }
    out
}

fn leaves<T: Real>(f: Vec<BasisFactor<T>>) -> Vec<OpExpr<T>> {
    f.into_iter().map(OpExpr::leaf).collect()
}

/// The three unit-step terms `I`, `rho1^{(x) log n_t} (x) I`, `-S_{+1} (x) I`.
pub fn decompose_l1e<T: Real>(n_t: usize, space_qubits: u32) -> Result<LcnuDecomposition<T>> {
    if n_t < 2 || !n_t.is_power_of_two() {
        return Err(CarlemanError::Config(format!("n_t = {n_t} is not a power of two >= 2")));
    }
    let qt = n_t.trailing_zeros();
    let one = Complex::new(T::one(), T::zero());
    let mut d = LcnuDecomposition::new(qt + space_qubits);
    d.push(TermExpr::kron(one, vec![BasisFactor::Identity(qt + space_qubits)]), TermLabel::L1)?;
    let mut f: Vec<BasisFactor<T>> = (0..qt).map(|_| rho(Rho::R1)).collect();
    f.push(BasisFactor::Identity(space_qubits));
    d.push(TermExpr::kron(one, f), TermLabel::L1)?;
    let s = BasisFactor::Permutation(Permutation::incrementer(qt, 1));
    d.push(TermExpr::kron(-one, vec![s, BasisFactor::Identity(space_qubits)]), TermLabel::L1)?;
    Ok(d)
}

/// Supplied sub-decompositions: `F_0^e` and `F_1` on `N`, `F_k^e = [F_k; 0]` on `N^k`.
#[derive(Clone, Debug, Default)]
pub struct FTerms<T> {
    pub qn: u32,
    pub f0e: Vec<TermExpr<T>>,
    pub f1: Vec<TermExpr<T>>,
    pub fke: BTreeMap<usize, Vec<TermExpr<T>>>,
}

impl<T: Real> FTerms<T> {
    pub fn new(qn: u32) -> Self {
        Self { qn, f0e: Vec::new(), f1: Vec::new(), fke: BTreeMap::new() }
    }

    fn check(&self) -> Result<()> {
        let bad = |name: &str, t: &TermExpr<T>, want: u32| {
            Err(CarlemanError::Shape(format!("{name} term on {} qubits, expected {want}", t.qubits())))
        };
        for t in self.f0e.iter().chain(&self.f1) {
            if t.qubits() != self.qn {
                return bad("F_0/F_1", t, self.qn);
            }
        }
        for (&k, terms) in &self.fke {
            if k < 2 {
                return Err(CarlemanError::Index(format!("nonlinear block k = {k}")));
            }
            for t in terms {
                if t.qubits() != k as u32 * self.qn {
                    return bad(&format!("F_{k}^e"), t, k as u32 * self.qn);
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Forcing,
    Linear,
    Nonlinear(usize),
}

/// Which block and which supplied sub-term a generated term came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AeTermIndex {
    pub family: Family,
    /// 1 for the `I` half of `(I - rho0^{(x) log n_t})`, 2 for the `rho0` half; 0 without a time register.
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub source: usize,
}

#[derive(Clone, Debug)]
pub struct AeDecomposition<T> {
    pub decomposition: LcnuDecomposition<T>,
    pub index: Vec<AeTermIndex>,
}

struct Spatial<T> {
    coeff: Complex<T>,
    expr: OpExpr<T>,
    index: AeTermIndex,
}

fn spatial_terms<T: Real>(f: &FTerms<T>, alpha: usize) -> Result<Vec<Spatial<T>>> {
    f.check()?;
    let qn = f.qn;
    let mut out = Vec::new();
    // linear blocks A^j_j
    for j in 1..=alpha {
        for l in 0..j {
            for (s, t) in f.f1.iter().enumerate() {
                let mut parts = leaves(rho_prefix(alpha - j, qn));
                parts.push(OpExpr::leaf(rho(Rho::R3)));
                parts.push(OpExpr::id(l as u32 * qn));
                parts.push(OpExpr::Layers(t.layers.clone()));
                parts.push(OpExpr::id((j - l - 1) as u32 * qn));
                out.push(Spatial {
                    coeff: t.coeff,
                    expr: OpExpr::Kron(parts),
                    index: AeTermIndex { family: Family::Linear, i: 0, j, l, source: s },
                });
            }
        }
    }
    // nonlinear blocks A^j_{j+k-1}
    for (&k, terms) in &f.fke {
        if alpha + 1 < k {
            continue;
        }
        let ku = k as u32;
        for j in 1..=alpha + 1 - k {
            for l in 0..j {
                let lu = l as u32;
                for (s, t) in terms.iter().enumerate() {
                    let mut left = leaves((0..(ku - 1) * qn).map(|_| rho(Rho::R0)).collect());
                    left.push(kq(lu * qn, qn));
                    let core = OpExpr::Prod(vec![
                        OpExpr::Kron(left),
                        OpExpr::Kron(vec![OpExpr::Layers(t.layers.clone()), OpExpr::id(lu * qn)]),
                        kq(ku * qn, lu * qn),
                    ]);
                    let body = OpExpr::Prod(vec![
                        OpExpr::Kron(vec![OpExpr::leaf(pk_factor(ku, qn)), OpExpr::id(j as u32 * qn)]),
                        OpExpr::Kron(vec![core, OpExpr::id((j - l - 1) as u32 * qn)]),
                    ]);
                    let mut parts = leaves(rho_prefix(alpha + 1 - k - j, qn));
                    parts.push(OpExpr::leaf(rho(Rho::R1)));
                    parts.push(body);
                    out.push(Spatial {
                        coeff: t.coeff,
                        expr: OpExpr::Kron(parts),
                        index: AeTermIndex { family: Family::Nonlinear(k), i: 0, j, l, source: s },
                    });
                }
            }
        }
    }
    // constant forcing blocks A^j_{j-1}, j >= 2
    for j in 2..=alpha {
        for l in 0..j {
            let lu = l as u32;
            for (s, t) in f.f0e.iter().enumerate() {
                let inner = OpExpr::Prod(vec![
                    OpExpr::Kron(vec![OpExpr::id(lu * qn), OpExpr::Layers(t.layers.clone())]),
                    kq(lu * qn, qn),
                ]);
                let p2t = Permutation { name: "P2T".into(), ..Permutation::xstring(qn, pk_target(2, 1u128 << qn)) };
                let body = OpExpr::Prod(vec![
                    OpExpr::Kron(vec![inner, OpExpr::id((j - l - 1) as u32 * qn)]),
                    OpExpr::Kron(vec![OpExpr::leaf(BasisFactor::Permutation(p2t)), OpExpr::id((j - 1) as u32 * qn)]),
                ]);
                let mut parts = leaves(rho_prefix(alpha - j, qn));
                parts.push(OpExpr::leaf(rho(Rho::R2)));
                parts.push(body);
                out.push(Spatial {
                    coeff: t.coeff,
                    expr: OpExpr::Kron(parts),
                    index: AeTermIndex { family: Family::Forcing, i: 0, j, l, source: s },
                });
            }
        }
    }
    Ok(out)
}

fn label(f: Family) -> TermLabel {
    match f {
        Family::Linear => TermLabel::Lin1,
        Family::Nonlinear(_) => TermLabel::Nlin,
        Family::Forcing => TermLabel::Generic,
    }
}

/// LCNU of the padded block `A_e` alone (no time register).
pub fn decompose_ae_block<T: Real>(f: &FTerms<T>, alpha: usize) -> Result<AeDecomposition<T>> {
    let q = alpha as u32 * f.qn + 1;
    let mut d = LcnuDecomposition::new(q);
    let mut index = Vec::new();
    for s in spatial_terms(f, alpha)? {
        d.push(TermExpr::from_expr(s.coeff, &s.expr), label(s.index.family))?;
        index.push(s.index);
    }
    Ok(AeDecomposition { decomposition: d, index })
}

/// LCNU of `L_2^(e) = (I - rho0^{(x) log n_t}) (x) A_e`; each spatial term
/// appears twice, with `I` (sign +) and `rho0^{(x) log n_t}` (sign -).
pub fn decompose_ae<T: Real>(f: &FTerms<T>, cfg: &CarlemanConfig<T>) -> Result<AeDecomposition<T>> {
    cfg.check()?;
    let qt = cfg.qt();
    let spatial = spatial_terms(f, cfg.alpha)?;
    let q = qt + cfg.alpha as u32 * f.qn + 1;
    let mut d = LcnuDecomposition::new(q);
    let mut index = Vec::new();
    for i in 1..=2usize {
        for s in &spatial {
            let (time, sign) = if i == 1 {
                (vec![OpExpr::id(qt)], T::one())
            } else {
                (leaves((0..qt).map(|_| rho(Rho::R0)).collect()), -T::one())
            };
            let mut parts = time;
            parts.push(s.expr.clone());
            let term = TermExpr::from_expr(s.coeff * sign, &OpExpr::Kron(parts));
            d.push(term, label(s.index.family))?;
            index.push(AeTermIndex { i, ..s.index });
        }
    }
    Ok(AeDecomposition { decomposition: d, index })
}

/// Full `L_e = L_1^(e) - dt L_2^(e)`. Index entries are `None` for the three unit-step terms.
pub fn decompose_le<T: Real>(
    f: &FTerms<T>,
    cfg: &CarlemanConfig<T>,
) -> Result<(LcnuDecomposition<T>, Vec<Option<AeTermIndex>>)> {
    let space = cfg.alpha as u32 * f.qn + 1;
    let mut d = decompose_l1e(cfg.n_t, space)?;
    let mut index = vec![None; d.len()];
    let ae = decompose_ae(f, cfg)?;
    d.extend(ae.decomposition.scaled(Complex::new(-cfg.dt, T::zero())))?;
    index.extend(ae.index.into_iter().map(Some));
    Ok((d, index))
}

/// Closed-form term count of [`decompose_ae`] given the supplied sub-term counts.
pub fn expected_ae_terms(n_f0: usize, n_f1: usize, n_fk: &BTreeMap<usize, usize>, alpha: usize) -> usize {
    let tri = |m: usize| m * (m + 1) / 2;
    let lin = n_f1 * tri(alpha);
    let nl: usize = n_fk.iter().map(|(&k, &c)| if alpha + 1 >= k { c * tri(alpha + 1 - k) } else { 0 }).sum();
    let forcing = n_f0 * (tri(alpha) - 1);
    2 * (lin + nl + forcing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pk_targets() {
        assert_eq!(pk_target(2, 4), 3);
        assert_eq!(pk_target(3, 2), 1);
        assert_eq!(pk_target(3, 4), 11);
    }

    #[test]
    fn unit_matrix_example() {
        let t = canonical_unit_matrix::<f64>(1, 2, 4).unwrap();
        assert_eq!(t.layers[0], vec![BasisFactor::Rho(Rho::R1), BasisFactor::Rho(Rho::R2)]);
        let t = canonical_unit_matrix::<f64>(0, 0, 8).unwrap();
        assert!(t.layers[0].iter().all(|f| *f == BasisFactor::Rho(Rho::R0)));
    }

    #[test]
    fn l1e_middle_term_for_two_steps() {
        let d = decompose_l1e::<f64>(2, 3).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.terms()[1].layers[0], vec![BasisFactor::Rho(Rho::R1), BasisFactor::Identity(3)]);
    }
}
