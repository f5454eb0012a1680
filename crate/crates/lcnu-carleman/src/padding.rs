//! Zero padding of the Carleman system to power-of-two block sizes.

use num_complex::Complex;

use lcnu_core::{BasisFactor, Real, Rho, SparseComplexMatrix};

use crate::error::{CarlemanError, Result};
use crate::ode::{block_start, carleman_dim, CarlemanConfig, CarlemanMatrices};

/// Offset of block `y_j` inside the padded range `[0, 2N^alpha)`.
pub fn padded_offset(n: usize, alpha: usize, j: usize) -> usize {
    2 * n.pow(alpha as u32) - (j..=alpha).map(|i| n.pow(i as u32)).sum::<usize>()
}

/// Unpadded index -> padded index within one time block.
pub fn block_layout(n: usize, alpha: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(carleman_dim(n, alpha));
    for j in 1..=alpha {
        let off = padded_offset(n, alpha, j);
        out.extend((0..n.pow(j as u32)).map(|u| off + u));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PaddedSystem<T> {
    pub a_e: SparseComplexMatrix<T>,
    pub l1e: SparseComplexMatrix<T>,
    pub l2e: SparseComplexMatrix<T>,
    pub l_e: SparseComplexMatrix<T>,
    pub b_e: Vec<Complex<T>>,
    /// Unpadded index of one time block -> padded index.
    pub layout: Vec<usize>,
    pub n: usize,
    pub alpha: usize,
    pub n_t: usize,
}

impl<T: Real> PaddedSystem<T> {
    pub fn block_size(&self) -> usize {
        2 * self.n.pow(self.alpha as u32)
    }

    pub fn qubits(&self) -> u32 {
        self.l_e.nrows().trailing_zeros()
    }

    /// Layout over all time blocks.
    pub fn full_layout(&self) -> Vec<usize> {
        let (d, p) = (self.layout.len(), self.block_size());
        (0..self.n_t * d).map(|u| (u / d) * p + self.layout[u % d]).collect()
    }

    /// `[[unpadded, padded], ...]` for the full layout.
    pub fn layout_json(&self) -> String {
        let pairs: Vec<[usize; 2]> = self.full_layout().into_iter().enumerate().map(|(u, p)| [u, p]).collect();
        serde_json::to_string(&pairs).expect("plain integers serialize")
    }
}

fn rho_string<T: Real>(r: Rho, q: u32) -> SparseComplexMatrix<T> {
    let f = BasisFactor::<T>::Rho(r).materialize().expect("2x2");
    (0..q).fold(SparseComplexMatrix::identity(1), |acc, _| acc.kron(&f))
}

/// `S_{+1}` on `r` states: `e_i -> e_{i+1 mod r}`.
pub fn incrementer_matrix<T: Real>(r: usize) -> SparseComplexMatrix<T> {
    let map: Vec<usize> = (0..r).map(|i| (i + 1) % r).collect();
    SparseComplexMatrix::permutation(&map).expect("cyclic shift")
}

pub fn pad_system<T: Real>(sys: &CarlemanMatrices<T>, cfg: &CarlemanConfig<T>) -> Result<PaddedSystem<T>> {
    if sys.alpha != cfg.alpha || sys.n_t != cfg.n_t {
        return Err(CarlemanError::Config("system and configuration disagree".into()));
    }
    let (n, alpha) = (sys.n, sys.alpha);
    let p = 2 * n.pow(alpha as u32);
    let layout = block_layout(n, alpha);
    let a_e = SparseComplexMatrix::from_triplets(p, p, sys.a.triplets().map(|(r, c, v)| (layout[r], layout[c], v)))?;
    let nt = cfg.n_t;
    let qt = cfg.qt();
    let time = SparseComplexMatrix::<T>::identity(nt).add(&rho_string(Rho::R1, qt))?.sub(&incrementer_matrix(nt))?;
    let l1e = time.kron(&SparseComplexMatrix::identity(p));
    let mask = SparseComplexMatrix::<T>::identity(nt).sub(&rho_string(Rho::R0, qt))?;
    let l2e = mask.kron(&a_e);
    let l_e = l1e.sub(&l2e.scale_real(cfg.dt))?;
    let delta = layout.len();
    let mut b_e = vec![Complex::new(T::zero(), T::zero()); nt * p];
    for t in 0..nt {
        for u in 0..delta {
            b_e[t * p + layout[u]] = sys.rhs[t * delta + u];
        }
    }
    Ok(PaddedSystem { a_e, l1e, l2e, l_e, b_e, layout, n, alpha, n_t: nt })
}

/// Offset helper re-exported for callers that index unpadded blocks.
pub fn unpadded_offset(n: usize, j: usize) -> usize {
    block_start(n, j)
}
