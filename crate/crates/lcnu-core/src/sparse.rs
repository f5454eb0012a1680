//! Compressed sparse row storage for complex matrices.

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::scalar::{cone, czero, is_zero, Real};

/// Sparse complex matrix in CSR layout. Exact zeros are never stored and the
/// column indices of every row are strictly increasing, so two matrices with
/// the same entries compare equal structurally.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseComplexMatrix<T> {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex<T>>,
}

impl<T: Real> SparseComplexMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, row_ptr: vec![0; nrows + 1], cols: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            cols: (0..n).collect(),
            vals: vec![cone(); n],
        }
    }

    /// Permutation matrix sending basis vector `j` to `map[j]`.
    pub fn permutation(map: &[usize]) -> Result<Self> {
        let n = map.len();
        let mut inv = vec![usize::MAX; n];
        for (j, &i) in map.iter().enumerate() {
            if i >= n || inv[i] != usize::MAX {
                return Err(CoreError::Invalid("index map is not a permutation".into()));
            }
            inv[i] = j;
        }
        Ok(Self {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            cols: inv,
            vals: vec![cone(); n],
        })
    }

    /// Builds from unordered triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Complex<T>)>,
    {
        let mut t: Vec<(usize, usize, Complex<T>)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(CoreError::IndexOutOfRange { row: r, col: c, nrows, ncols });
            }
            t.push((r, c, v));
        }
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut cols = Vec::with_capacity(t.len());
        let mut vals: Vec<Complex<T>> = Vec::with_capacity(t.len());
        let mut rows = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            if let (Some(&lr), Some(&lc)) = (rows.last(), cols.last()) {
                if lr == r && lc == c {
                    let last = vals.last_mut().unwrap();
                    *last = *last + v;
                    continue;
                }
            }
            rows.push(r);
            cols.push(c);
            vals.push(v);
        }
        let mut out_cols = Vec::with_capacity(cols.len());
        let mut out_vals = Vec::with_capacity(vals.len());
        for ((r, c), v) in rows.into_iter().zip(cols).zip(vals) {
            if is_zero(&v) {
                continue;
            }
            row_ptr[r + 1] += 1;
            out_cols.push(c);
            out_vals.push(v);
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(Self { nrows, ncols, row_ptr, cols: out_cols, vals: out_vals })
    }

    /// Builds from a row-major dense buffer.
    pub fn from_dense(nrows: usize, ncols: usize, data: &[Complex<T>]) -> Result<Self> {
        if data.len() != nrows * ncols {
            return Err(CoreError::DimensionMismatch(format!(
                "dense buffer of length {} for {}x{}",
                data.len(),
                nrows,
                ncols
            )));
        }
        let trip = (0..nrows).flat_map(|r| (0..ncols).map(move |c| (r, c))).filter_map(|(r, c)| {
            let v = data[r * ncols + c];
            (!is_zero(&v)).then_some((r, c, v))
        });
        Self::from_triplets(nrows, ncols, trip)
    }

    pub fn from_real_dense(nrows: usize, ncols: usize, data: &[T]) -> Result<Self> {
        let c: Vec<Complex<T>> = data.iter().map(|&x| Complex::new(x, T::zero())).collect();
        Self::from_dense(nrows, ncols, &c)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Column indices and values of row `r`.
    pub fn row(&self, r: usize) -> (&[usize], &[Complex<T>]) {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    /// Triplets in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex<T>)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            let (c, v) = self.row(r);
            c.iter().zip(v.iter()).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        if r >= self.nrows || c >= self.ncols {
            return czero();
        }
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(k) => vals[k],
            Err(_) => czero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Complex<T>> {
        let mut d = vec![czero(); self.nrows * self.ncols];
        for (r, c, v) in self.triplets() {
            d[r * self.ncols + c] = v;
        }
        d
    }

    pub fn kron(&self, other: &Self) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut cols = Vec::with_capacity(self.nnz() * other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() * other.nnz());
        row_ptr.push(0);
        for ra in 0..self.nrows {
            let (ca, va) = self.row(ra);
            for rb in 0..other.nrows {
                let (cb, vb) = other.row(rb);
                for (&x, &u) in ca.iter().zip(va) {
                    for (&y, &w) in cb.iter().zip(vb) {
                        let p = u * w;
                        if !is_zero(&p) {
                            cols.push(x * other.ncols + y);
                            vals.push(p);
                        }
                    }
                }
                row_ptr.push(cols.len());
            }
        }
        Self { nrows, ncols, row_ptr, cols, vals }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(CoreError::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let n = other.ncols;
        let mut acc = vec![czero::<T>(); n];
        let mut mark = vec![usize::MAX; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut row_ptr = Vec::with_capacity(self.nrows + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for r in 0..self.nrows {
            touched.clear();
            let (ca, va) = self.row(r);
            for (&k, &a) in ca.iter().zip(va) {
                let (cb, vb) = other.row(k);
                for (&c, &b) in cb.iter().zip(vb) {
                    if mark[c] != r {
                        mark[c] = r;
                        acc[c] = czero();
                        touched.push(c);
                    }
                    acc[c] = acc[c] + a * b;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if !is_zero(&acc[c]) {
                    cols.push(c);
                    vals.push(acc[c]);
                }
            }
            row_ptr.push(cols.len());
        }
        Ok(Self { nrows: self.nrows, ncols: n, row_ptr, cols, vals })
    }

    fn combine(&self, other: &Self, sign: T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(CoreError::DimensionMismatch(format!(
                "sum of {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut row_ptr = Vec::with_capacity(self.nrows + 1);
        let mut cols = Vec::with_capacity(self.nnz() + other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() + other.nnz());
        row_ptr.push(0);
        for r in 0..self.nrows {
            let (ca, va) = self.row(r);
            let (cb, vb) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < ca.len() || j < cb.len() {
                let (c, v) = if j >= cb.len() || (i < ca.len() && ca[i] < cb[j]) {
                    i += 1;
                    (ca[i - 1], va[i - 1])
                } else if i >= ca.len() || cb[j] < ca[i] {
                    j += 1;
                    (cb[j - 1], vb[j - 1] * sign)
                } else {
                    i += 1;
                    j += 1;
                    (ca[i - 1], va[i - 1] + vb[j - 1] * sign)
                };
                if !is_zero(&v) {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Ok(Self { nrows: self.nrows, ncols: self.ncols, row_ptr, cols, vals })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -T::one())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        if is_zero(&s) {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        for v in out.vals.iter_mut() {
            *v = *v * s;
        }
        out.drop_zeros()
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    fn drop_zeros(self) -> Self {
        if self.vals.iter().all(|v| !is_zero(v)) {
            return self;
        }
        let t: Vec<_> = self.triplets().collect();
        Self::from_triplets(self.nrows, self.ncols, t).expect("indices already valid")
    }

    pub fn transpose(&self) -> Self {
        let t = self.triplets().map(|(r, c, v)| (c, r, v));
        Self::from_triplets(self.ncols, self.nrows, t).expect("indices already valid")
    }

    pub fn adjoint(&self) -> Self {
        let t = self.triplets().map(|(r, c, v)| (c, r, v.conj()));
        Self::from_triplets(self.ncols, self.nrows, t).expect("indices already valid")
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if x.len() != self.ncols {
            return Err(CoreError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.ncols
            )));
        }
        Ok((0..self.nrows)
            .map(|r| {
                let (c, v) = self.row(r);
                c.iter().zip(v).fold(czero(), |acc, (&c, &v)| acc + v * x[c])
            })
            .collect())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.vals.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Rows `rows` and columns `cols` of `self`, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut col_pos = std::collections::HashMap::with_capacity(cols.len());
        for (k, &c) in cols.iter().enumerate() {
            if c >= self.ncols {
                return Err(CoreError::IndexOutOfRange { row: 0, col: c, nrows: self.nrows, ncols: self.ncols });
            }
            col_pos.insert(c, k);
        }
        let mut t = Vec::new();
        for (i, &r) in rows.iter().enumerate() {
            if r >= self.nrows {
                return Err(CoreError::IndexOutOfRange { row: r, col: 0, nrows: self.nrows, ncols: self.ncols });
            }
            let (c, v) = self.row(r);
            for (&c, &v) in c.iter().zip(v) {
                if let Some(&k) = col_pos.get(&c) {
                    t.push((i, k, v));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), t)
    }

    /// Copies `block` into a zero matrix of shape `nrows x ncols` at offset (`r0`, `c0`).
    pub fn place(&self, nrows: usize, ncols: usize, r0: usize, c0: usize) -> Result<Self> {
        if r0 + self.nrows > nrows || c0 + self.ncols > ncols {
            return Err(CoreError::DimensionMismatch("block does not fit".into()));
        }
        let t = self.triplets().map(|(r, c, v)| (r + r0, c + c0, v));
        Self::from_triplets(nrows, ncols, t)
    }

    /// `max |U U^dagger - I|`; only meaningful for square matrices.
    pub fn unitarity_defect(&self) -> Result<T> {
        let p = self.matmul(&self.adjoint())?;
        p.max_abs_diff(&Self::identity(self.nrows))
    }

    /// Drops entries with modulus at or below `tol`.
    pub fn pruned(&self, tol: T) -> Self {
        let t: Vec<_> = self.triplets().filter(|(_, _, v)| v.norm() > tol).collect();
        Self::from_triplets(self.nrows, self.ncols, t).expect("indices already valid")
    }

    pub fn cast<U: Real>(&self) -> SparseComplexMatrix<U> {
        let conv = |x: T| U::from_f64(x.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(U::nan);
        SparseComplexMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr: self.row_ptr.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|v| Complex::new(conv(v.re), conv(v.im))).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.vals.iter().all(|v| v.im == T::zero())
    }
}
