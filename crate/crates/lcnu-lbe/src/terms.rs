//! Sub-term families of `F_1`, `F_2^(e)` and `F_3^(e)` as symbolic products.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use lcnu_carleman::FTerms;
use lcnu_core::{
    BasisFactor, DenseMatrix, OpExpr, PauliTerm, PermTag, Permutation, Rho, SparseMatrix, SvdGroup, Term,
    UnitaryFactor, UnitaryRole,
};

use crate::config::LbeConfig;
use crate::error::Result;
use crate::operators::{f1_matrix, f2_matrix, f3_matrix};
use crate::subdec::{SubDecompositions, SvdDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Origin of an `F`-level sub-term. `m` and `q` are one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FSource {
    Stream { axis: Axis, p: i8, m: usize },
    Collision { m: usize },
    Quadratic { q: usize, m: usize },
    Cubic { q: usize, m: usize },
}

#[derive(Clone, Debug)]
pub struct SourcedTerm {
    pub source: FSource,
    pub term: Term,
}

fn log2(n: usize) -> u32 {
    n.trailing_zeros()
}

fn dense(name: String, m: &DMatrix<f64>, role: UnitaryRole) -> Result<BasisFactor<f64>> {
    let n = m.nrows();
    let data: Vec<f64> = (0..n * n).map(|i| m[(i / n, i % n)]).collect();
    Ok(BasisFactor::Unitary(UnitaryFactor::dense(name, DenseMatrix::from_real(n, &data), role)?))
}

/// `W sigma V^T` as a three-layer product on `log Q` qubits.
fn svd_product(name: &str, s: &SvdDecomposition, p: &PauliTerm<f64>, group: SvdGroup) -> Result<OpExpr<f64>> {
    let w = dense(format!("W_{name}"), &s.w, UnitaryRole::SvdLeft(group))?;
    let vt = dense(format!("V_{name}^T"), &s.v.transpose(), UnitaryRole::SvdRight(group))?;
    let sigma = OpExpr::Kron(p.factors().into_iter().map(OpExpr::leaf).collect());
    Ok(OpExpr::Prod(vec![OpExpr::leaf(w), sigma, OpExpr::leaf(vt)]))
}

fn push_id(parts: &mut Vec<OpExpr<f64>>, q: u32) {
    if q > 0 {
        parts.push(OpExpr::id(q));
    }
}

/// Streaming terms `p/2 b_{eta,m} (I (x) S_p (x) I) (x) sigma_{f(eta,m)}`, then collision
/// terms `(a_m / tau) I_n (x) W_R sigma_{g(m)} V_R^T`; also returns `F_1` built directly.
pub fn build_f1(cfg: &LbeConfig, sub: &SubDecompositions) -> Result<(Vec<SourcedTerm>, SparseMatrix)> {
    cfg.lattice.require_padded()?;
    let (lx, ly, lz) = (log2(cfg.nx), log2(cfg.ny), log2(cfg.nz));
    let mut out = Vec::new();
    for axis in Axis::ALL {
        let (above, here, below) = match axis {
            Axis::X => (ly + lz, lx, 0),
            Axis::Y => (lz, ly, lx),
            Axis::Z => (0, lz, lx + ly),
        };
        for p in [1i8, -1] {
            for (mi, pt) in sub.e_terms[axis.index()].iter().enumerate() {
                let mut parts = Vec::new();
                push_id(&mut parts, above);
                if here > 0 {
                    parts.push(OpExpr::leaf(BasisFactor::Permutation(Permutation::incrementer(here, p as i64))));
                }
                push_id(&mut parts, below);
                parts.extend(pt.factors().into_iter().map(OpExpr::leaf));
                let coeff = pt.coeff * (0.5 * p as f64);
                out.push(SourcedTerm {
                    source: FSource::Stream { axis, p, m: mi + 1 },
                    term: Term::from_expr(coeff, &OpExpr::Kron(parts)),
                });
            }
        }
    }
    for (mi, pt) in sub.r.terms.iter().enumerate() {
        let mut parts = Vec::new();
        push_id(&mut parts, cfg.log_sites());
        parts.push(svd_product("R", &sub.r, pt, SvdGroup::Collision)?);
        out.push(SourcedTerm {
            source: FSource::Collision { m: mi + 1 },
            term: Term::from_expr(pt.coeff / cfg.tau, &OpExpr::Kron(parts)),
        });
    }
    Ok((out, f1_matrix(cfg, &sub.coeffs)))
}

fn rho0s(k: u32) -> Vec<OpExpr<f64>> {
    (0..k).map(|_| OpExpr::leaf(BasisFactor::Rho(Rho::R0))).collect()
}

fn build_fk(cfg: &LbeConfig, sub: &SubDecompositions, k: u32) -> Result<Vec<SourcedTerm>> {
    cfg.lattice.require_padded()?;
    let qq = cfg.lattice.qq();
    let ln = cfg.log_sites();
    let qn = cfg.qn();
    let mut out = Vec::new();
    for (qi, g) in sub.gamma.iter().enumerate() {
        let Some(g) = g else { continue };
        let q = qi as u32 + 1;
        // D_k Bbar_{k,q}, acting on log((Qn)^k) - log Q qubits
        let (bbar, dk, scale) = if k == 2 {
            let b = Permutation::new(format!("B2bar[{q}]"), 2 * ln + qq, PermTag::BBar2 { qq, qn: ln, q })?;
            (BasisFactor::Permutation(b), qn, 2.0)
        } else {
            (BasisFactor::Unitary(UnitaryFactor::bbar3(qq, ln, q)), 2 * qn, -(2f64.powf(qq as f64 / 2.0)))
        };
        let mut dparts = rho0s(dk);
        dparts.push(OpExpr::id(ln));
        let left = OpExpr::Prod(vec![OpExpr::Kron(dparts), OpExpr::leaf(bbar)]);
        for (mi, pt) in g.terms.iter().enumerate() {
            let right = svd_product(&format!("G{q}"), g, pt, SvdGroup::Tensor(q))?;
            let source = if k == 2 { FSource::Quadratic { q: q as usize, m: mi + 1 } } else { FSource::Cubic { q: q as usize, m: mi + 1 } };
            out.push(SourcedTerm {
                source,
                term: Term::from_expr(pt.coeff * (scale / cfg.tau), &OpExpr::Kron(vec![left.clone(), right])),
            });
        }
    }
    Ok(out)
}

/// `F_2^(e)` terms `(2 c_{q,m} / tau) (D_2 Bbar_{2,q}) (x) W sigma V^T` and `F_2` built directly.
pub fn build_f2(cfg: &LbeConfig, sub: &SubDecompositions) -> Result<(Vec<SourcedTerm>, SparseMatrix)> {
    Ok((build_fk(cfg, sub, 2)?, f2_matrix(cfg, &sub.coeffs)))
}

/// `F_3^(e)` terms with coefficient `-c_{q,m} 2^{log Q / 2} / tau` and `F_3` built directly.
pub fn build_f3(cfg: &LbeConfig, sub: &SubDecompositions) -> Result<(Vec<SourcedTerm>, SparseMatrix)> {
    Ok((build_fk(cfg, sub, 3)?, f3_matrix(cfg, &sub.coeffs)))
}

/// All sub-terms in the layout expected by the Carleman decomposition, with source tables.
#[derive(Clone, Debug)]
pub struct LbeFTerms {
    pub fterms: FTerms<f64>,
    pub f1_sources: Vec<FSource>,
    pub fk_sources: BTreeMap<usize, Vec<FSource>>,
}

pub fn lbe_fterms(cfg: &LbeConfig, sub: &SubDecompositions) -> Result<LbeFTerms> {
    let mut f = FTerms::new(cfg.qn());
    let (f1, _) = build_f1(cfg, sub)?;
    let f1_sources = f1.iter().map(|t| t.source).collect();
    f.f1 = f1.into_iter().map(|t| t.term).collect();
    let mut fk_sources = BTreeMap::new();
    for k in [2usize, 3] {
        let terms = build_fk(cfg, sub, k as u32)?;
        fk_sources.insert(k, terms.iter().map(|t| t.source).collect());
        f.fke.insert(k, terms.into_iter().map(|t| t.term).collect());
    }
    Ok(LbeFTerms { fterms: f, f1_sources, fk_sources })
}

/// Sum of materialized sub-terms.
pub fn materialize_sum(terms: &[SourcedTerm]) -> Result<SparseMatrix> {
    let mut acc: Option<SparseMatrix> = None;
    for t in terms {
        let m = t.term.materialize()?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m)?,
        });
    }
    Ok(acc.unwrap_or_else(|| SparseMatrix::zeros(0, 0)))
}
