//! Textbook dense linear algebra used as an independent oracle.
#![allow(dead_code)]

use lcnu_core::C64;

pub type Dense = Vec<Vec<C64>>;

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![C64::new(0.0, 0.0); c]; r]
}

pub fn eye(n: usize) -> Dense {
    let mut m = zeros(n, n);
    for i in 0..n {
        m[i][i] = C64::new(1.0, 0.0);
    }
    m
}

pub fn rho(k: usize) -> Dense {
    let mut m = zeros(2, 2);
    m[k / 2][k % 2] = C64::new(1.0, 0.0);
    m
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut m = zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    m[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    m
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    assert_eq!(a[0].len(), k);
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Dense) -> Dense {
    let mut m = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[j][i] = v.conj();
        }
    }
    m
}

/// Permutation matrix with column `j` equal to `e_{map[j]}`.
pub fn perm(map: &[usize]) -> Dense {
    let mut m = zeros(map.len(), map.len());
    for (j, &i) in map.iter().enumerate() {
        m[i][j] = C64::new(1.0, 0.0);
    }
    m
}

pub fn from_sparse(s: &lcnu_core::SparseMatrix) -> Dense {
    let mut m = zeros(s.nrows(), s.ncols());
    for (r, c, v) in s.triplets() {
        m[r][c] = v;
    }
    m
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    assert_eq!((a.len(), a[0].len()), (b.len(), b[0].len()));
    a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).norm())).fold(0.0, f64::max)
}

/// Returns the slot string ('0', '1', 'F') when `g` is a Kronecker product
/// of rho0, rho3 and I (up to a positive scale), big-endian.
pub fn rho_pattern(g: &Dense, qubits: usize) -> Option<String> {
    let n = g.len();
    let tol = 1e-9;
    let mut support = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = g[i][j];
            if v.norm() < tol {
                continue;
            }
            if i != j || (v.re - 1.0).abs() > tol || v.im.abs() > tol {
                return None;
            }
            support.push(i);
        }
    }
    if support.is_empty() {
        return None;
    }
    let and = support.iter().fold(usize::MAX, |a, &x| a & x);
    let or = support.iter().fold(0, |a, &x| a | x);
    if support.len() != 1 << (and ^ or).count_ones() {
        return None;
    }
    Some(
        (0..qubits)
            .map(|p| {
                let b = qubits - 1 - p;
                if (and ^ or) >> b & 1 == 1 {
                    'F'
                } else if and >> b & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect(),
    )
}
