#![allow(dead_code)]

use lcnu_carleman::PolynomialODE;
use lcnu_core::{SparseMatrix, C64};
use rand::Rng;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn random_block(rows: usize, cols: usize, density: f64, rng: &mut impl Rng) -> SparseMatrix {
    let mut t = Vec::new();
    for r in 0..rows {
        for col in 0..cols {
            if rng.gen::<f64>() < density {
                t.push((r, col, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5))));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, t).unwrap()
}

/// Random ODE with blocks `F_0..F_nf` on `N = 2^qn`.
pub fn random_ode(qn: u32, nf: usize, rng: &mut impl Rng) -> PolynomialODE<f64> {
    let n = 1usize << qn;
    let blocks = (0..=nf).map(|k| Some(random_block(n, n.pow(k as u32), 0.6, rng))).collect();
    PolynomialODE::from_blocks(qn, blocks).unwrap()
}

/// Gaussian elimination with partial pivoting on a dense copy.
pub fn dense_solve(a: &SparseMatrix, b: &[C64]) -> Vec<C64> {
    let n = a.nrows();
    let d = a.to_dense();
    let mut m: Vec<Vec<C64>> = (0..n).map(|r| d[r * n..(r + 1) * n].to_vec()).collect();
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].norm().partial_cmp(&m[j][k].norm()).unwrap()).unwrap();
        m.swap(k, p);
        x.swap(k, p);
        let piv = m[k][k];
        assert!(piv.norm() > 1e-14, "singular");
        for i in k + 1..n {
            let f = m[i][k] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k..n {
                let v = m[k][j];
                m[i][j] -= f * v;
            }
            let v = x[k];
            x[i] -= f * v;
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= m[k][j] * x[j];
        }
        x[k] = s / m[k][k];
    }
    x
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
