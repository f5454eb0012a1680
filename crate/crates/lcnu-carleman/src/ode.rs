//! Polynomial ODEs and their truncated Carleman linearization.

use num_complex::Complex;

use lcnu_core::{Real, SparseComplexMatrix};

use crate::error::{CarlemanError, Result};

/// `df/dt = sum_k F_k f^{(x) k}` with `F_k` of shape `N x N^k` (`F_0` is a column).
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialODE<T> {
    qn: u32,
    f: Vec<Option<SparseComplexMatrix<T>>>,
}

impl<T: Real> PolynomialODE<T> {
    /// Empty ODE on `N = 2^qn` with degree `nf`.
    pub fn new(qn: u32, nf: usize) -> Self {
        Self { qn, f: vec![None; nf + 1] }
    }

    /// Builds from `F_0..F_{N_F}`; `None` entries are zero blocks.
    pub fn from_blocks(qn: u32, f: Vec<Option<SparseComplexMatrix<T>>>) -> Result<Self> {
        let mut ode = Self::new(qn, f.len().saturating_sub(1));
        for (k, m) in f.into_iter().enumerate() {
            if let Some(m) = m {
                ode.set(k, m)?;
            }
        }
        Ok(ode)
    }

    pub fn set(&mut self, k: usize, m: SparseComplexMatrix<T>) -> Result<()> {
        if k >= self.f.len() {
            self.f.resize(k + 1, None);
        }
        let n = self.n();
        let want = (n, n.pow(k as u32));
        if m.shape() != want {
            return Err(CarlemanError::Shape(format!("F_{k} is {:?}, expected {want:?}", m.shape())));
        }
        self.f[k] = Some(m);
        Ok(())
    }

    pub fn qn(&self) -> u32 {
        self.qn
    }

    pub fn n(&self) -> usize {
        1usize << self.qn
    }

    /// Polynomial degree `N_F` (highest configured block, zero or not).
    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// Highest `k` with a nonzero block.
    pub fn effective_degree(&self) -> usize {
        (0..self.f.len()).rev().find(|&k| self.block(k).is_some_and(|m| m.nnz() > 0)).unwrap_or(0)
    }

    pub fn block(&self, k: usize) -> Option<&SparseComplexMatrix<T>> {
        self.f.get(k).and_then(|m| m.as_ref())
    }

    /// `F_k`, or a zero block of the right shape.
    pub fn block_or_zero(&self, k: usize) -> SparseComplexMatrix<T> {
        self.block(k)
            .cloned()
            .unwrap_or_else(|| SparseComplexMatrix::zeros(self.n(), self.n().pow(k as u32)))
    }

    /// Right-hand side `sum_k F_k f^{(x)k}`.
    pub fn rhs(&self, f: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let n = self.n();
        let mut out = vec![Complex::new(T::zero(), T::zero()); n];
        let mut power = vec![Complex::new(T::one(), T::zero())];
        for k in 0..=self.degree() {
            if let Some(m) = self.block(k) {
                for (o, v) in out.iter_mut().zip(m.mul_vec(&power)?) {
                    *o = *o + v;
                }
            }
            power = kron_vec(&power, f);
        }
        Ok(out)
    }
}

pub fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CarlemanConfig<T> {
    pub alpha: usize,
    pub n_t: usize,
    pub dt: T,
}

impl<T: Real> CarlemanConfig<T> {
    pub fn new(alpha: usize, n_t: usize, dt: T) -> Result<Self> {
        let c = Self { alpha, n_t, dt };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        if self.alpha < 1 {
            return Err(CarlemanError::Config("truncation order must be at least 1".into()));
        }
        if self.n_t < 2 || !self.n_t.is_power_of_two() {
            return Err(CarlemanError::Config(format!("n_t = {} is not a power of two >= 2", self.n_t)));
        }
        if !(self.dt > T::zero()) {
            return Err(CarlemanError::Config("dt must be positive".into()));
        }
        Ok(())
    }

    /// Validates the order against an ODE: nonlinear systems need `alpha >= 2`.
    pub fn check_for(&self, ode: &PolynomialODE<T>) -> Result<()> {
        self.check()?;
        if ode.effective_degree() >= 2 && self.alpha < 2 {
            return Err(CarlemanError::Config(format!(
                "truncation order {} too small for a degree-{} system",
                self.alpha,
                ode.effective_degree()
            )));
        }
        Ok(())
    }

    pub fn qt(&self) -> u32 {
        self.n_t.trailing_zeros()
    }
}

/// `sum_{l<j} I_{N^l} (x) F_k (x) I_{N^{j-l-1}}`, shape `N^j x N^{j+k-1}`.
pub fn transfer_block<T: Real>(ode: &PolynomialODE<T>, j: usize, k: usize) -> Result<SparseComplexMatrix<T>> {
    if j < 1 || k > ode.degree() {
        return Err(CarlemanError::Index(format!("A^{j}_{{{j}+{k}-1}} with N_F = {}", ode.degree())));
    }
    let n = ode.n();
    let f = ode.block_or_zero(k);
    let rows = n.pow(j as u32);
    let cols = n.pow((j + k - 1) as u32);
    let mut trip = Vec::new();
    for l in 0..j {
        let left = SparseComplexMatrix::<T>::identity(n.pow(l as u32));
        let right = SparseComplexMatrix::<T>::identity(n.pow((j - l - 1) as u32));
        trip.extend(left.kron(&f).kron(&right).triplets());
    }
    Ok(SparseComplexMatrix::from_triplets(rows, cols, trip)?)
}

/// `(f0, f0^{(x)2}, ..., f0^{(x)alpha})`.
pub fn initial_state<T: Real>(f0: &[Complex<T>], alpha: usize) -> Vec<Complex<T>> {
    let mut out = Vec::new();
    let mut p = vec![Complex::new(T::one(), T::zero())];
    for _ in 0..alpha {
        p = kron_vec(&p, f0);
        out.extend_from_slice(&p);
    }
    out
}

/// Start of block `y_j` in the unpadded stacked state.
pub fn block_start(n: usize, j: usize) -> usize {
    (1..j).map(|i| n.pow(i as u32)).sum()
}

/// `Delta = sum_{j=1}^alpha N^j`.
pub fn carleman_dim(n: usize, alpha: usize) -> usize {
    block_start(n, alpha + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CarlemanMatrices<T> {
    pub a: SparseComplexMatrix<T>,
    pub b: Vec<Complex<T>>,
    pub l: SparseComplexMatrix<T>,
    pub rhs: Vec<Complex<T>>,
    pub n: usize,
    pub alpha: usize,
    pub n_t: usize,
}

/// Assembles `A`, `b`, the backward-Euler matrix `L` and right-hand side `B`.
/// `y0` is the stacked initial state; defaults to zero.
pub fn assemble_carleman<T: Real>(
    ode: &PolynomialODE<T>,
    cfg: &CarlemanConfig<T>,
    y0: Option<&[Complex<T>]>,
) -> Result<CarlemanMatrices<T>> {
    cfg.check_for(ode)?;
    let n = ode.n();
    let alpha = cfg.alpha;
    let delta = carleman_dim(n, alpha);
    let mut trip = Vec::new();
    for j in 1..=alpha {
        for k in 0..=ode.degree() {
            let col_block = j + k;
            // block A^j_{j+k-1} lives in column block j+k-1
            if col_block < 2 || col_block - 1 > alpha || ode.block(k).is_none() {
                continue;
            }
            let blk = transfer_block(ode, j, k)?;
            let (r0, c0) = (block_start(n, j), block_start(n, col_block - 1));
            trip.extend(blk.triplets().map(|(r, c, v)| (r + r0, c + c0, v)));
        }
    }
    let a = SparseComplexMatrix::from_triplets(delta, delta, trip)?;
    let mut b = vec![Complex::new(T::zero(), T::zero()); delta];
    if let Some(f0) = ode.block(0) {
        for (r, _, v) in f0.triplets() {
            b[r] = v;
        }
    }
    let y0: Vec<Complex<T>> = match y0 {
        Some(v) if v.len() == delta => v.to_vec(),
        Some(v) => return Err(CarlemanError::Shape(format!("initial state of length {} for dimension {delta}", v.len()))),
        None => vec![Complex::new(T::zero(), T::zero()); delta],
    };
    let l = time_stepping_matrix(&a, cfg)?;
    let dt = Complex::new(cfg.dt, T::zero());
    let mut rhs = y0;
    for _ in 1..cfg.n_t {
        rhs.extend(b.iter().map(|&x| x * dt));
    }
    Ok(CarlemanMatrices { a, b, l, rhs, n, alpha, n_t: cfg.n_t })
}

/// Block lower bidiagonal `[[I], [-I, I - dt A], ..., [-I, I - dt A]]`.
pub fn time_stepping_matrix<T: Real>(a: &SparseComplexMatrix<T>, cfg: &CarlemanConfig<T>) -> Result<SparseComplexMatrix<T>> {
    let d = a.nrows();
    let step = SparseComplexMatrix::identity(d).sub(&a.scale_real(cfg.dt))?;
    let mut trip: Vec<_> = (0..d).map(|i| (i, i, Complex::new(T::one(), T::zero()))).collect();
    for r in 1..cfg.n_t {
        trip.extend((0..d).map(|i| (r * d + i, (r - 1) * d + i, Complex::new(-T::one(), T::zero()))));
        trip.extend(step.triplets().map(|(i, j, v)| (r * d + i, r * d + j, v)));
    }
    Ok(SparseComplexMatrix::from_triplets(cfg.n_t * d, cfg.n_t * d, trip)?)
}
