//! Pauli-basis decomposition of sparse matrices by per-shift Walsh-Hadamard transforms.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::factor::{BasisFactor, Pauli};
use crate::scalar::Real;
use crate::sparse::SparseComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn factor<T: Real>(self) -> BasisFactor<T> {
        match self {
            PauliLetter::I => BasisFactor::Identity(1),
            PauliLetter::X => BasisFactor::Pauli(Pauli::X),
            PauliLetter::Y => BasisFactor::Pauli(Pauli::Y),
            PauliLetter::Z => BasisFactor::Pauli(Pauli::Z),
        }
    }
}

/// `coeff * sigma_1 (x) ... (x) sigma_n`, letters in Kronecker order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm<T> {
    pub coeff: Complex<T>,
    pub letters: Vec<PauliLetter>,
}

impl<T: Real> PauliTerm<T> {
    pub fn label(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }

    pub fn factors(&self) -> Vec<BasisFactor<T>> {
        self.letters.iter().map(|l| l.factor()).collect()
    }

    pub fn materialize(&self) -> Result<SparseComplexMatrix<T>> {
        let mut m = SparseComplexMatrix::identity(1);
        for f in self.factors() {
            m = m.kron(&f.materialize()?);
        }
        Ok(m.scale(self.coeff))
    }
}

fn wht<T: Real>(v: &mut [Complex<T>]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Runs `visit(x, z, coeff)` for every Pauli coefficient above `tol`. `x`/`z`
/// are the little-endian flip and phase masks of the string.
fn for_each_coeff<T: Real>(
    m: &SparseComplexMatrix<T>,
    tol: T,
    mut visit: impl FnMut(usize, usize, Complex<T>),
) -> Result<()> {
    let (r, c) = m.shape();
    if r != c || !r.is_power_of_two() {
        return Err(CoreError::NotPowerOfTwo(r.max(c)));
    }
    let n = r;
    let mut shifts: BTreeMap<usize, Vec<(usize, Complex<T>)>> = BTreeMap::new();
    for (i, j, v) in m.triplets() {
        shifts.entry(i ^ j).or_default().push((j, v));
    }
    let inv = T::one() / T::from_usize(n).expect("dimension fits");
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for (x, entries) in shifts {
        buf.iter_mut().for_each(|b| *b = Complex::new(T::zero(), T::zero()));
        for (col, v) in entries {
            buf[col] = v;
        }
        wht(&mut buf);
        for (z, s) in buf.iter().enumerate() {
            // P_{x,z} = i^{|x & z|} X^x Z^z, so the coefficient carries (-i)^{|x & z|}
            let phase = match (x & z).count_ones() % 4 {
                0 => Complex::new(T::one(), T::zero()),
                1 => Complex::new(T::zero(), -T::one()),
                2 => Complex::new(-T::one(), T::zero()),
                _ => Complex::new(T::zero(), T::one()),
            };
            let cf = *s * phase * inv;
            if cf.norm() > tol {
                visit(x, z, cf);
            }
        }
    }
    Ok(())
}

/// Number of Pauli strings with coefficient magnitude above `tol`.
pub fn pauli_count<T: Real>(m: &SparseComplexMatrix<T>, tol: T) -> Result<usize> {
    let mut k = 0;
    for_each_coeff(m, tol, |_, _, _| k += 1)?;
    Ok(k)
}

/// Full decomposition, sorted by descending magnitude then string.
pub fn pauli_decompose<T: Real>(m: &SparseComplexMatrix<T>, tol: T) -> Result<Vec<PauliTerm<T>>> {
    let q = m.nrows().trailing_zeros() as usize;
    let mut out = Vec::new();
    for_each_coeff(m, tol, |x, z, coeff| {
        let letters = (0..q)
            .map(|p| {
                let bit = q - 1 - p;
                match ((x >> bit) & 1, (z >> bit) & 1) {
                    (0, 0) => PauliLetter::I,
                    (1, 0) => PauliLetter::X,
                    (1, 1) => PauliLetter::Y,
                    _ => PauliLetter::Z,
                }
            })
            .collect();
        out.push(PauliTerm { coeff, letters });
    })?;
    out.sort_by(|a, b| {
        b.coeff.norm().partial_cmp(&a.coeff.norm()).unwrap_or(std::cmp::Ordering::Equal).then_with(|| a.letters.cmp(&b.letters))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_is_recovered_with_unit_coefficient() {
        let y = BasisFactor::<f64>::Pauli(Pauli::Y).materialize().unwrap();
        let d = pauli_decompose(&y, 1e-12).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].label(), "Y");
        assert!((d[0].coeff - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_matrix_uses_only_z_strings() {
        let m = SparseComplexMatrix::<f64>::from_real_dense(4, 4, &[
            1.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 0.0, 4.0,
        ])
        .unwrap();
        let d = pauli_decompose(&m, 1e-12).unwrap();
        assert!(d.iter().all(|t| t.letters.iter().all(|l| matches!(l, PauliLetter::I | PauliLetter::Z))));
        assert_eq!(d[0].label(), "II");
        assert!((d[0].coeff.re - 2.5).abs() < 1e-15);
    }
}
