//! Terms as products of Kronecker layers, and decompositions into sums of terms.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::factor::{BasisFactor, MATERIALIZE_LIMIT};
use crate::gram::gram_signature;
use crate::scalar::{is_zero, Real};
use crate::sparse::SparseComplexMatrix;

/// Kronecker product of factors, most significant first.
pub type FactorLayer<T> = Vec<BasisFactor<T>>;

/// `coeff * layers[0] * layers[1] * ...`, each layer a Kronecker product.
#[derive(Clone, Debug, PartialEq)]
pub struct TermExpr<T> {
    pub coeff: Complex<T>,
    pub layers: Vec<FactorLayer<T>>,
}

fn layer_qubits<T: Real>(layer: &[BasisFactor<T>]) -> u32 {
    layer.iter().map(|f| f.qubits()).sum()
}

impl<T: Real> TermExpr<T> {
    pub fn new(coeff: Complex<T>, layers: Vec<FactorLayer<T>>) -> Result<Self> {
        if layers.is_empty() {
            return Err(CoreError::Invalid("term without layers".into()));
        }
        let q = layer_qubits(&layers[0]);
        if let Some(bad) = layers.iter().find(|l| layer_qubits(l) != q) {
            return Err(CoreError::DimensionMismatch(format!(
                "layer of {} qubits in a term of {q} qubits",
                layer_qubits(bad)
            )));
        }
        Ok(Self { coeff, layers })
    }

    /// Single-layer term.
    pub fn kron(coeff: Complex<T>, factors: Vec<BasisFactor<T>>) -> Self {
        Self { coeff, layers: vec![factors] }
    }

    pub fn from_expr(coeff: Complex<T>, expr: &OpExpr<T>) -> Self {
        Self { coeff, layers: expr.flatten() }
    }

    pub fn qubits(&self) -> u32 {
        layer_qubits(&self.layers[0])
    }

    pub fn dim(&self) -> Option<usize> {
        let q = self.qubits();
        (q < usize::BITS).then(|| 1usize << q)
    }

    pub fn with_coeff(&self, coeff: Complex<T>) -> Self {
        Self { coeff, layers: self.layers.clone() }
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        self.with_coeff(self.coeff * s)
    }

    /// Factor product without the coefficient.
    pub fn materialize_operator(&self) -> Result<SparseComplexMatrix<T>> {
        let q = self.qubits();
        if q > MATERIALIZE_LIMIT {
            return Err(CoreError::TooLarge { qubits: q });
        }
        let mut acc: Option<SparseComplexMatrix<T>> = None;
        for layer in &self.layers {
            if layer.iter().all(|f| matches!(f, BasisFactor::Identity(_))) {
                continue;
            }
            let mut m = SparseComplexMatrix::identity(1);
            for f in layer {
                m = m.kron(&f.materialize()?);
            }
            acc = Some(match acc {
                None => m,
                Some(a) => a.matmul(&m)?,
            });
        }
        Ok(acc.unwrap_or_else(|| SparseComplexMatrix::identity(1 << q)))
    }

    pub fn materialize(&self) -> Result<SparseComplexMatrix<T>> {
        Ok(self.materialize_operator()?.scale(self.coeff))
    }

    /// One line per layer, e.g. `rho0 (x) I[2] (x) K(2,2)`.
    pub fn render(&self) -> String {
        self.layers
            .iter()
            .map(|l| l.iter().map(|f| f.label()).collect::<Vec<_>>().join(" (x) "))
            .collect::<Vec<_>>()
            .join("  *  ")
    }
}

/// Nested tensor expression that flattens into Kronecker layers.
#[derive(Clone, Debug, PartialEq)]
pub enum OpExpr<T> {
    Leaf(BasisFactor<T>),
    Kron(Vec<OpExpr<T>>),
    Prod(Vec<OpExpr<T>>),
    /// Splices the layers of an existing term (coefficient dropped).
    Layers(Vec<FactorLayer<T>>),
}

impl<T: Real> OpExpr<T> {
    pub fn leaf(f: BasisFactor<T>) -> Self {
        OpExpr::Leaf(f)
    }

    pub fn id(qubits: u32) -> Self {
        OpExpr::Leaf(BasisFactor::Identity(qubits))
    }

    pub fn qubits(&self) -> u32 {
        match self {
            OpExpr::Leaf(f) => f.qubits(),
            OpExpr::Kron(v) => v.iter().map(|e| e.qubits()).sum(),
            OpExpr::Prod(v) => v.first().map(|e| e.qubits()).unwrap_or(0),
            OpExpr::Layers(l) => l.first().map(|l| layer_qubits(l)).unwrap_or(0),
        }
    }

    /// Flattens via `(A B) (x) (C D) = (A (x) C)(B (x) D)`, padding shorter
    /// products with identities on the right. Adjacent identities merge and
    /// layers made only of identities are dropped (one is kept if nothing else remains).
    pub fn flatten(&self) -> Vec<FactorLayer<T>> {
        let raw = self.flatten_raw();
        let q = self.qubits();
        let mut out: Vec<FactorLayer<T>> = raw
            .into_iter()
            .map(merge_identities)
            .filter(|l| !(l.len() == 1 && matches!(l[0], BasisFactor::Identity(_))))
            .collect();
        if out.is_empty() {
            out.push(vec![BasisFactor::Identity(q)]);
        }
        out
    }

    fn flatten_raw(&self) -> Vec<FactorLayer<T>> {
        match self {
            OpExpr::Leaf(f) => vec![vec![f.clone()]],
            OpExpr::Layers(l) => l.clone(),
            OpExpr::Prod(v) => v.iter().flat_map(|e| e.flatten_raw()).collect(),
            OpExpr::Kron(v) => {
                let parts: Vec<(u32, Vec<FactorLayer<T>>)> = v.iter().map(|e| (e.qubits(), e.flatten_raw())).collect();
                let depth = parts.iter().map(|p| p.1.len()).max().unwrap_or(0);
                (0..depth)
                    .map(|t| {
                        parts
                            .iter()
                            .flat_map(|(q, layers)| match layers.get(t) {
                                Some(l) => l.clone(),
                                None => vec![BasisFactor::Identity(*q)],
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }
}

fn merge_identities<T: Real>(layer: FactorLayer<T>) -> FactorLayer<T> {
    let mut out: FactorLayer<T> = Vec::with_capacity(layer.len());
    for f in layer {
        match (&f, out.last_mut()) {
            (BasisFactor::Identity(0), _) => {}
            (BasisFactor::Identity(a), Some(BasisFactor::Identity(b))) => *b += a,
            _ => out.push(f),
        }
    }
    if out.is_empty() {
        out.push(BasisFactor::Identity(0));
    }
    out
}

/// Family a term belongs to in a Carleman-LBE decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum TermLabel {
    L1,
    Lin1,
    Lin2,
    Nlin,
    Generic,
}

impl TermLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TermLabel::L1 => "L1",
            TermLabel::Lin1 => "lin1",
            TermLabel::Lin2 => "lin2",
            TermLabel::Nlin => "nlin",
            TermLabel::Generic => "generic",
        }
    }
}

/// `sum_i term_i`, all terms on the same number of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct LcnuDecomposition<T> {
    qubits: u32,
    terms: Vec<TermExpr<T>>,
    labels: Vec<TermLabel>,
}

impl<T: Real> LcnuDecomposition<T> {
    pub fn new(qubits: u32) -> Self {
        Self { qubits, terms: Vec::new(), labels: Vec::new() }
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> Option<usize> {
        (self.qubits < usize::BITS).then(|| 1usize << self.qubits)
    }

    /// Adds a term; rejects wrong sizes and terms that vanish identically.
    pub fn push(&mut self, term: TermExpr<T>, label: TermLabel) -> Result<()> {
        if term.qubits() != self.qubits {
            return Err(CoreError::DimensionMismatch(format!(
                "term of {} qubits in a decomposition of {} qubits",
                term.qubits(),
                self.qubits
            )));
        }
        if is_zero(&term.coeff) {
            return Err(CoreError::Trivial);
        }
        if let crate::gram::GramOutcome::InR(g) = gram_signature(&term)? {
            if g.is_trivial() {
                return Err(CoreError::Trivial);
            }
        }
        self.terms.push(term);
        self.labels.push(label);
        Ok(())
    }

    pub fn extend(&mut self, other: LcnuDecomposition<T>) -> Result<()> {
        for (t, l) in other.terms.into_iter().zip(other.labels) {
            self.push(t, l)?;
        }
        Ok(())
    }

    pub fn terms(&self) -> &[TermExpr<T>] {
        &self.terms
    }

    pub fn labels(&self) -> &[TermLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermExpr<T>, TermLabel)> {
        self.terms.iter().zip(self.labels.iter().copied())
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self { qubits: self.qubits, terms: self.terms.iter().map(|t| t.scaled(s)).collect(), labels: self.labels.clone() }
    }

    pub fn materialize(&self) -> Result<SparseComplexMatrix<T>> {
        if self.qubits > MATERIALIZE_LIMIT {
            return Err(CoreError::TooLarge { qubits: self.qubits });
        }
        let n = 1usize << self.qubits;
        let mut trip = Vec::new();
        for t in &self.terms {
            trip.extend(t.materialize()?.triplets());
        }
        SparseComplexMatrix::from_triplets(n, n, trip)
    }
}
