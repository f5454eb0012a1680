//! Basis factors: the tensor building blocks of an LCNU term.

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::scalar::{cone, czero, Real};
use crate::sparse::SparseComplexMatrix;

/// Largest factor (in qubits) we are willing to materialize as a matrix.
pub const MATERIALIZE_LIMIT: u32 = 24;

/// Elementary 2x2 operators `rho_{2i+j} = |i><j|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rho {
    R0,
    R1,
    R2,
    R3,
}

impl Rho {
    pub fn index(self) -> u8 {
        match self {
            Rho::R0 => 0,
            Rho::R1 => 1,
            Rho::R2 => 2,
            Rho::R3 => 3,
        }
    }

    pub fn from_index(k: u8) -> Option<Rho> {
        match k {
            0 => Some(Rho::R0),
            1 => Some(Rho::R1),
            2 => Some(Rho::R2),
            3 => Some(Rho::R3),
            _ => None,
        }
    }

    /// `|row><col|` for single bits.
    pub fn from_bits(row: bool, col: bool) -> Rho {
        Rho::from_index(2 * row as u8 + col as u8).unwrap()
    }

    pub fn row(self) -> usize {
        (self.index() >> 1) as usize
    }

    pub fn col(self) -> usize {
        (self.index() & 1) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Structured permutations. Indices are little-endian within the factor:
/// bit `w` of a basis index belongs to the factor's wire `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermTag {
    /// `|x> -> |x + shift mod 2^q>`.
    Incrementer { shift: i64 },
    /// Commutation matrix `K^(2^qa, 2^qb)`: `y (x) x -> x (x) y`.
    Commutation { qa: u32, qb: u32 },
    /// Pauli-X string `|x> -> |x ^ mask>`.
    XString { mask: u128 },
    /// CNOT ladder `prod_i CX(i, i + qm)` for `i < qr`.
    MLadder { qm: u32, qr: u32 },
    /// Quadratic index map: ladder with `qm = qn + qq`, `qr = qn`, then X string `(q-1) << qn`.
    BBar2 { qq: u32, qn: u32, q: u32 },
    Swap,
    /// Arbitrary permutation given by its image table.
    Explicit(Arc<Vec<usize>>),
}

/// GF(2)-affine map `x -> A x + b` on `q`-bit strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub q: u32,
    /// `cols[i] = A e_i`.
    pub cols: Vec<u128>,
    pub shift: u128,
}

impl Affine {
    pub fn identity(q: u32) -> Self {
        Self { q, cols: (0..q).map(|i| 1u128 << i).collect(), shift: 0 }
    }

    pub fn apply(&self, x: u128) -> u128 {
        let mut y = self.shift;
        for (i, &c) in self.cols.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                y ^= c;
            }
        }
        y
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Affine) -> Affine {
        let lin = |x: u128| self.apply(x) ^ self.shift;
        Affine { q: self.q, cols: first.cols.iter().map(|&c| lin(c)).collect(), shift: self.apply(first.shift) }
    }

    /// Image of the subcube described by `pattern` (Kronecker order, position 0
    /// is the most significant bit). `None` when the image is not a subcube.
    pub fn image_of_subcube(&self, pattern: &[crate::gram::Slot]) -> Option<Vec<crate::gram::Slot>> {
        use crate::gram::Slot;
        let q = self.q as usize;
        debug_assert_eq!(pattern.len(), q);
        let mut base = 0u128;
        let mut free = Vec::new();
        for (p, s) in pattern.iter().enumerate() {
            let bit = q - 1 - p;
            match s {
                Slot::One => base |= 1u128 << bit,
                Slot::Zero => {}
                Slot::Free => free.push(bit),
            }
        }
        let offset = self.apply(base);
        // xor basis of the image directions, keyed by leading bit
        let mut basis: Vec<u128> = Vec::new();
        for &i in &free {
            let mut v = self.cols[i];
            for &b in &basis {
                let lead = 127 - b.leading_zeros();
                if (v >> lead) & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                basis.push(v);
                basis.sort_by(|a, b| b.cmp(a));
            }
        }
        let support = basis.iter().fold(0u128, |s, &v| s | v);
        if support.count_ones() as usize != basis.len() {
            return None;
        }
        Some(
            (0..q)
                .map(|p| {
                    let bit = q - 1 - p;
                    if (support >> bit) & 1 == 1 {
                        Slot::Free
                    } else if (offset >> bit) & 1 == 1 {
                        Slot::One
                    } else {
                        Slot::Zero
                    }
                })
                .collect(),
        )
    }
}

fn mask(q: u32) -> u128 {
    if q >= 128 {
        u128::MAX
    } else {
        (1u128 << q) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    pub name: String,
    pub qubits: u32,
    pub tag: PermTag,
}

impl Permutation {
    pub fn new(name: impl Into<String>, qubits: u32, tag: PermTag) -> Result<Self> {
        let ok = match &tag {
            PermTag::Incrementer { .. } | PermTag::XString { .. } => true,
            PermTag::Commutation { qa, qb } => qa + qb == qubits,
            PermTag::MLadder { qm, qr } => qr <= qm && qm + qr <= qubits,
            PermTag::BBar2 { qq, qn, q } => 2 * qn + qq == qubits && *q >= 1 && (*q as u128 - 1) >> qq == 0,
            PermTag::Swap => qubits == 2,
            PermTag::Explicit(map) => {
                let mut seen = vec![false; map.len()];
                map.len() as u128 == 1u128 << qubits
                    && map.iter().all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
            }
        };
        if !ok || qubits > 128 {
            return Err(CoreError::Invalid(format!("inconsistent permutation `{}`", name.into())));
        }
        if let PermTag::XString { mask: m } = tag {
            if m & !mask(qubits) != 0 {
                return Err(CoreError::Invalid("X-string mask wider than register".into()));
            }
        }
        Ok(Self { name: name.into(), qubits, tag })
    }

    pub fn incrementer(qubits: u32, shift: i64) -> Self {
        let name = if shift >= 0 { format!("S+{shift}") } else { format!("S{shift}") };
        Self { name, qubits, tag: PermTag::Incrementer { shift } }
    }

    pub fn commutation(qa: u32, qb: u32) -> Self {
        Self { name: format!("K({qa},{qb})"), qubits: qa + qb, tag: PermTag::Commutation { qa, qb } }
    }

    pub fn xstring(qubits: u32, value: u128) -> Self {
        Self { name: format!("X[{value}]"), qubits, tag: PermTag::XString { mask: value } }
    }

    /// Image of basis index `x`.
    pub fn apply(&self, x: u128) -> u128 {
        let q = self.qubits;
        match &self.tag {
            PermTag::Incrementer { shift } => {
                let m = mask(q);
                let s = (*shift as i128).rem_euclid(1i128 << q.min(126)) as u128;
                x.wrapping_add(s) & m
            }
            PermTag::Commutation { qa, qb } => {
                let x_part = x & mask(*qa);
                let y_part = x >> qa;
                (x_part << qb) | y_part
            }
            PermTag::XString { mask } => x ^ mask,
            PermTag::MLadder { qm, qr } => ladder(x, *qm, *qr),
            PermTag::BBar2 { qq, qn, q } => ladder(x, qn + qq, *qn) ^ (((*q as u128) - 1) << qn),
            PermTag::Swap => (x & !3) | ((x & 1) << 1) | ((x >> 1) & 1),
            PermTag::Explicit(map) => map[x as usize] as u128,
        }
    }

    pub fn affine(&self) -> Option<Affine> {
        let q = self.qubits;
        let lin = |f: &dyn Fn(u128) -> u128| Affine { q, cols: (0..q).map(|i| f(1u128 << i)).collect(), shift: 0 };
        match &self.tag {
            PermTag::Incrementer { .. } | PermTag::Explicit(_) => None,
            PermTag::XString { mask } => Some(Affine { shift: *mask, ..Affine::identity(q) }),
            PermTag::BBar2 { qq, qn, q: idx } => {
                let mut a = lin(&|x| ladder(x, qn + qq, *qn));
                a.shift = ((*idx as u128) - 1) << qn;
                Some(a)
            }
            _ => Some(lin(&|x| self.apply(x))),
        }
    }

    pub fn index_map(&self) -> Result<Vec<usize>> {
        if self.qubits > MATERIALIZE_LIMIT {
            return Err(CoreError::TooLarge { qubits: self.qubits });
        }
        Ok((0..1u128 << self.qubits).map(|x| self.apply(x) as usize).collect())
    }

    pub fn inverse_map(&self) -> Result<Vec<usize>> {
        let m = self.index_map()?;
        let mut inv = vec![0; m.len()];
        for (j, &i) in m.iter().enumerate() {
            inv[i] = j;
        }
        Ok(inv)
    }
}

fn ladder(x: u128, qm: u32, qr: u32) -> u128 {
    let ctrl = x & mask(qr);
    x ^ (ctrl << qm)
}

/// Row-major dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    pub n: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn from_real(n: usize, data: &[T]) -> Self {
        assert_eq!(data.len(), n * n);
        Self { n, data: data.iter().map(|&x| Complex::new(x, T::zero())).collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.n + c]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self { n, data: (0..n * n).map(|k| self.data[(k % n) * n + k / n]).collect() }
    }

    pub fn to_sparse(&self) -> SparseComplexMatrix<T> {
        SparseComplexMatrix::from_dense(self.n, self.n, &self.data).expect("square buffer")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SvdGroup {
    /// Linear collision matrix.
    Collision,
    /// Quadratic collision tensor slice `q` (1-based).
    Tensor(u32),
}

/// Role of a unitary factor when pricing a controlled implementation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitaryRole {
    Generic,
    /// Left singular factor; carries the cost of the controlled pair.
    SvdLeft(SvdGroup),
    /// Right singular factor; free because its partner carries the pair cost.
    SvdRight(SvdGroup),
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnitaryKind<T> {
    Dense(Arc<DenseMatrix<T>>),
    /// Unitary lift of the cubic index map: Hadamards on the middle register,
    /// the `(Qn)^2 + 1` ladder and the quadratic map on the low registers.
    BBar3 { qq: u32, qn: u32, q: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryFactor<T> {
    pub name: String,
    pub qubits: u32,
    pub kind: UnitaryKind<T>,
    pub role: UnitaryRole,
}

impl<T: Real> UnitaryFactor<T> {
    pub fn dense(name: impl Into<String>, matrix: DenseMatrix<T>, role: UnitaryRole) -> Result<Self> {
        let n = matrix.n;
        if !n.is_power_of_two() {
            return Err(CoreError::NotPowerOfTwo(n));
        }
        Ok(Self { name: name.into(), qubits: n.trailing_zeros(), kind: UnitaryKind::Dense(Arc::new(matrix)), role })
    }

    pub fn bbar3(qq: u32, qn: u32, q: u32) -> Self {
        Self {
            name: format!("B3bar[{q}]"),
            qubits: 3 * qn + 2 * qq,
            kind: UnitaryKind::BBar3 { qq, qn, q },
            role: UnitaryRole::Generic,
        }
    }

    pub fn materialize(&self) -> Result<SparseComplexMatrix<T>> {
        if self.qubits > MATERIALIZE_LIMIT {
            return Err(CoreError::TooLarge { qubits: self.qubits });
        }
        match &self.kind {
            UnitaryKind::Dense(m) => Ok(m.to_sparse()),
            UnitaryKind::BBar3 { qq, qn, q } => {
                let h = hadamard_power::<T>(*qq);
                let layer_h = SparseComplexMatrix::identity(1 << qn)
                    .kron(&h)
                    .kron(&SparseComplexMatrix::identity(1 << (2 * qn + qq)));
                let lad = Permutation::new("M", self.qubits, PermTag::MLadder { qm: 2 * (qn + qq), qr: *qn })?;
                let b2 = Permutation::new("B2bar", 2 * qn + qq, PermTag::BBar2 { qq: *qq, qn: *qn, q: *q })?;
                let layer_b2 = SparseComplexMatrix::identity(1 << (qn + qq))
                    .kron(&SparseComplexMatrix::permutation(&b2.index_map()?)?);
                let layer_m = SparseComplexMatrix::permutation(&lad.index_map()?)?;
                layer_b2.matmul(&layer_m)?.matmul(&layer_h)
            }
        }
    }
}

fn hadamard_power<T: Real>(k: u32) -> SparseComplexMatrix<T> {
    let s = T::FRAC_1_SQRT_2();
    let h = SparseComplexMatrix::from_real_dense(2, 2, &[s, s, s, -s]).unwrap();
    (0..k).fold(SparseComplexMatrix::identity(1), |acc, _| acc.kron(&h))
}

/// One tensor factor of a term.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisFactor<T> {
    Rho(Rho),
    Pauli(Pauli),
    /// Identity on the given number of qubits.
    Identity(u32),
    Permutation(Permutation),
    Unitary(UnitaryFactor<T>),
}

impl<T: Real> BasisFactor<T> {
    pub fn qubits(&self) -> u32 {
        match self {
            BasisFactor::Rho(_) | BasisFactor::Pauli(_) => 1,
            BasisFactor::Identity(q) => *q,
            BasisFactor::Permutation(p) => p.qubits,
            BasisFactor::Unitary(u) => u.qubits,
        }
    }

    pub fn identity_dim(dim: usize) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(CoreError::NotPowerOfTwo(dim));
        }
        Ok(BasisFactor::Identity(dim.trailing_zeros()))
    }

    pub fn is_rho(&self) -> bool {
        matches!(self, BasisFactor::Rho(_))
    }

    /// Unitary completion: rho factors become I or X, everything else is kept.
    pub fn completion(&self) -> Self {
        match self {
            BasisFactor::Rho(Rho::R0) | BasisFactor::Rho(Rho::R3) => BasisFactor::Identity(1),
            BasisFactor::Rho(_) => BasisFactor::Pauli(Pauli::X),
            other => other.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BasisFactor::Rho(r) => format!("rho{}", r.index()),
            BasisFactor::Pauli(p) => format!("{p:?}"),
            BasisFactor::Identity(q) => format!("I[{q}]"),
            BasisFactor::Permutation(p) => p.name.clone(),
            BasisFactor::Unitary(u) => u.name.clone(),
        }
    }

    pub fn materialize(&self) -> Result<SparseComplexMatrix<T>> {
        let z = czero::<T>();
        let o = cone::<T>();
        let i = Complex::new(T::zero(), T::one());
        match self {
            BasisFactor::Rho(r) => SparseComplexMatrix::from_triplets(2, 2, [(r.row(), r.col(), o)]),
            BasisFactor::Pauli(Pauli::X) => SparseComplexMatrix::from_dense(2, 2, &[z, o, o, z]),
            BasisFactor::Pauli(Pauli::Y) => SparseComplexMatrix::from_dense(2, 2, &[z, -i, i, z]),
            BasisFactor::Pauli(Pauli::Z) => SparseComplexMatrix::from_dense(2, 2, &[o, z, z, -o]),
            BasisFactor::Identity(q) => {
                if *q > MATERIALIZE_LIMIT {
                    return Err(CoreError::TooLarge { qubits: *q });
                }
                Ok(SparseComplexMatrix::identity(1 << q))
            }
            BasisFactor::Permutation(p) => SparseComplexMatrix::permutation(&p.index_map()?),
            BasisFactor::Unitary(u) => u.materialize(),
        }
    }

    pub fn descriptor(&self) -> FactorDescriptor {
        match self {
            BasisFactor::Rho(r) => FactorDescriptor::Rho { index: r.index() },
            BasisFactor::Pauli(p) => FactorDescriptor::Pauli { op: *p },
            BasisFactor::Identity(q) => FactorDescriptor::Identity { qubits: *q },
            BasisFactor::Permutation(p) => FactorDescriptor::Permutation { name: p.name.clone(), qubits: p.qubits },
            BasisFactor::Unitary(u) => {
                FactorDescriptor::Unitary { name: u.name.clone(), qubits: u.qubits, role: u.role }
            }
        }
    }
}

/// Serializable summary of a factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorDescriptor {
    Rho { index: u8 },
    Pauli { op: Pauli },
    Identity { qubits: u32 },
    Permutation { name: String, qubits: u32 },
    Unitary { name: String, qubits: u32, role: UnitaryRole },
}
