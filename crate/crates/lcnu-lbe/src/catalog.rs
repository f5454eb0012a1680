//! Enumeration of every LCNU term of the padded Carleman-LBE matrix.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use lcnu_carleman::{decompose_l1e, decompose_ae, CarlemanConfig, CarlemanError, Family};
use lcnu_core::{complete_term, gram_signature, re, Decomposition, GramSignature, SparseMatrix, Term, TermLabel, C64};

use crate::config::LbeConfig;
use crate::error::{LbeError, Result};
use crate::subdec::SubDecompositions;
use crate::terms::{lbe_fterms, Axis, FSource};

/// Tuple index of a catalog term. `m` and `q` are one-based, `l` zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Lambda {
    L1 { index: usize },
    Lin1 { i: usize, j: usize, l: usize, axis: Axis, p: i8, m: usize },
    Lin2 { i: usize, j: usize, l: usize, m: usize },
    Nlin { k: usize, i: usize, j: usize, l: usize, q: usize, m: usize },
}

impl Lambda {
    pub fn label(&self) -> TermLabel {
        match self {
            Lambda::L1 { .. } => TermLabel::L1,
            Lambda::Lin1 { .. } => TermLabel::Lin1,
            Lambda::Lin2 { .. } => TermLabel::Lin2,
            Lambda::Nlin { .. } => TermLabel::Nlin,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub lambda: Lambda,
    /// Coefficient inside its group (`L_1^(e)` or `L_2^(e)`).
    pub coeff: C64,
    /// The term with its coefficient in `L_e = L_1^(e) - dt L_2^(e)`.
    pub term: Term,
    pub completion: Term,
    pub gram: GramSignature<f64>,
}

#[derive(Clone, Debug)]
pub struct TermCatalog {
    pub lattice: String,
    pub alpha: usize,
    pub n_t: usize,
    pub dt: f64,
    pub qubits: u32,
    pub entries: Vec<CatalogEntry>,
}

impl TermCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, label: TermLabel) -> usize {
        self.entries.iter().filter(|e| e.lambda.label() == label).count()
    }

    pub fn decomposition(&self) -> Result<Decomposition> {
        let mut d = Decomposition::new(self.qubits);
        for e in &self.entries {
            d.push(e.term.clone(), e.lambda.label())?;
        }
        Ok(d)
    }

    pub fn materialize(&self) -> Result<SparseMatrix> {
        Ok(self.decomposition()?.materialize()?)
    }

    /// One JSON object per line: tuple, coefficients, Gram pattern and factor layers.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let layers = |t: &Term| -> Vec<Vec<lcnu_core::FactorDescriptor>> {
            t.layers.iter().map(|l| l.iter().map(|f| f.descriptor()).collect()).collect()
        };
        for e in &self.entries {
            let line = json!({
                "lambda": e.lambda,
                "label": e.lambda.label().as_str(),
                "coeff": [e.coeff.re, e.coeff.im],
                "le_coeff": [e.term.coeff.re, e.term.coeff.im],
                "gram": e.gram.pattern_string(),
                "t_count": e.gram.t_count(),
                "layers": layers(&e.term),
                "completion": layers(&e.completion),
            });
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

/// `N_s = alpha(alpha+1)(2 N_Ex + 2 N_Ey + 2 N_Ez + N_R) + 2 (alpha-1)^2 N_Gamma + 3`.
pub fn expected_catalog_size(sub: &SubDecompositions, alpha: usize) -> usize {
    let ne: usize = (0..3).map(|a| sub.n_e(a)).sum();
    let a1 = alpha.saturating_sub(1);
    alpha * (alpha + 1) * (2 * ne + sub.n_r()) + 2 * a1 * a1 * sub.n_gamma() + 3
}

fn entry(lambda: Lambda, coeff: C64, term: Term) -> Result<CatalogEntry> {
    let gram = gram_signature(&term)?.into_signature()?;
    let completion = complete_term(&term)?;
    Ok(CatalogEntry { lambda, coeff, term, completion, gram })
}

pub fn enumerate_terms(
    cfg: &LbeConfig,
    sub: &SubDecompositions,
    alpha: usize,
    n_t: usize,
    dt: f64,
) -> Result<TermCatalog> {
    cfg.lattice.require_padded()?;
    if alpha < 2 {
        return Err(LbeError::Carleman(CarlemanError::Config(format!(
            "truncation order {alpha} too small for a degree-3 system"
        ))));
    }
    let ccfg = CarlemanConfig::new(alpha, n_t, dt)?;
    let lf = lbe_fterms(cfg, sub)?;
    let space = alpha as u32 * cfg.qn() + 1;
    let mut entries = Vec::new();
    let l1 = decompose_l1e::<f64>(n_t, space)?;
    for (idx, t) in l1.terms().iter().enumerate() {
        entries.push(entry(Lambda::L1 { index: idx + 1 }, t.coeff, t.clone())?);
    }
    let ae = decompose_ae(&lf.fterms, &ccfg)?;
    let minus_dt = re(-dt);
    for (t, ix) in ae.decomposition.terms().iter().zip(&ae.index) {
        let (i, j, l) = (ix.i, ix.j, ix.l);
        let lambda = match ix.family {
            Family::Linear => match lf.f1_sources[ix.source] {
                FSource::Stream { axis, p, m } => Lambda::Lin1 { i, j, l, axis, p, m },
                FSource::Collision { m } => Lambda::Lin2 { i, j, l, m },
                other => unreachable!("{other:?} in the linear family"),
            },
            Family::Nonlinear(k) => match lf.fk_sources[&k][ix.source] {
                FSource::Quadratic { q, m } | FSource::Cubic { q, m } => Lambda::Nlin { k, i, j, l, q, m },
                other => unreachable!("{other:?} in the nonlinear family"),
            },
            Family::Forcing => unreachable!("the lattice Boltzmann system has no forcing"),
        };
        entries.push(entry(lambda, t.coeff, t.scaled(minus_dt))?);
    }
    entries.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    Ok(TermCatalog {
        lattice: cfg.lattice.name.clone(),
        alpha,
        n_t,
        dt,
        qubits: ccfg.qt() + space,
        entries,
    })
}
