//! Direct assembly of the streaming and collision operators.

use lcnu_carleman::PolynomialODE;
use lcnu_core::{re, SparseMatrix, C64};

use crate::collision::{collision_coeffs, CollisionCoefficients};
use crate::config::LbeConfig;
use crate::error::Result;

/// Row-major `Q x Q` real matrix.
pub type RealMatrix = Vec<f64>;

/// Diagonal velocity component matrix `E_eta` (axis 0, 1, 2 = x, y, z).
pub fn velocity_matrix(cfg: &LbeConfig, axis: usize) -> RealMatrix {
    let q = cfg.lattice.q();
    let mut e = vec![0.0; q * q];
    for m in 0..q {
        e[m * q + m] = cfg.lattice.velocities[m][axis] as f64;
    }
    e
}

/// Linear collision block `R` with `R[m][q] = beta_{m,q}`.
pub fn r_matrix(coeffs: &CollisionCoefficients) -> RealMatrix {
    coeffs.beta.clone()
}

/// `Gamma_q[m][r] = gamma_{q,m,r}` (`q` zero-based).
pub fn gamma_matrix(coeffs: &CollisionCoefficients, q: usize) -> RealMatrix {
    let n = coeffs.q;
    (0..n * n).map(|i| coeffs.gamma(q, i / n, i % n)).collect()
}

fn real_sparse(n: usize, m: &RealMatrix) -> SparseMatrix {
    SparseMatrix::from_real_dense(n, n, m).expect("square block")
}

/// Site index of `(ix, iy, iz)`; x runs fastest.
pub fn site_index(cfg: &LbeConfig, ix: usize, iy: usize, iz: usize) -> usize {
    (iz * cfg.ny + iy) * cfg.nx + ix
}

/// Central-difference streaming operator with periodic wrap, built from the stencil.
pub fn streaming_matrix(cfg: &LbeConfig) -> SparseMatrix {
    let q = cfg.lattice.q();
    let (nx, ny, nz) = (cfg.nx, cfg.ny, cfg.nz);
    let mut t = Vec::new();
    for iz in 0..nz {
        for iy in 0..ny {
            for ix in 0..nx {
                let row_site = site_index(cfg, ix, iy, iz);
                for m in 0..q {
                    let e = cfg.lattice.velocities[m];
                    let row = row_site * q + m;
                    let neighbours = [
                        (e[0], site_index(cfg, (ix + 1) % nx, iy, iz), site_index(cfg, (ix + nx - 1) % nx, iy, iz)),
                        (e[1], site_index(cfg, ix, (iy + 1) % ny, iz), site_index(cfg, ix, (iy + ny - 1) % ny, iz)),
                        (e[2], site_index(cfg, ix, iy, (iz + 1) % nz), site_index(cfg, ix, iy, (iz + nz - 1) % nz)),
                    ];
                    for (comp, plus, minus) in neighbours {
                        if comp != 0 {
                            t.push((row, plus * q + m, re(-0.5 * comp as f64)));
                            t.push((row, minus * q + m, re(0.5 * comp as f64)));
                        }
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(q * cfg.sites(), q * cfg.sites(), t).expect("in range")
}

/// `B_{2,q}` (`q` one-based): row `i` has a single 1 at `i (Qn + 1) + (q - 1) n`.
pub fn b2_matrix(cfg: &LbeConfig, q: usize) -> SparseMatrix {
    let (qe, n) = (cfg.lattice.q(), cfg.sites());
    let t = (0..n).map(|i| (i, i * (qe * n + 1) + (q - 1) * n, re(1.0)));
    SparseMatrix::from_triplets(n, qe * n * n, t).expect("in range")
}

/// `B_{3,q}`: row `i` has ones at `j Q n^2 + i ((Qn)^2 + Qn + 1) + (q - 1) n` for `j < Q`.
pub fn b3_matrix(cfg: &LbeConfig, q: usize) -> SparseMatrix {
    let (qe, n) = (cfg.lattice.q(), cfg.sites());
    let qn = qe * n;
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..qe {
            t.push((i, j * qe * n * n + i * (qn * qn + qn + 1) + (q - 1) * n, re(1.0)));
        }
    }
    SparseMatrix::from_triplets(n, qe * qe * n * n * n, t).expect("in range")
}

/// `F_1 = S + I_n (x) R`.
pub fn f1_matrix(cfg: &LbeConfig, coeffs: &CollisionCoefficients) -> SparseMatrix {
    let q = cfg.lattice.q();
    let collision = SparseMatrix::identity(cfg.sites()).kron(&real_sparse(q, &r_matrix(coeffs)));
    streaming_matrix(cfg).add(&collision).expect("same shape")
}

fn fk_matrix(cfg: &LbeConfig, coeffs: &CollisionCoefficients, k: usize) -> SparseMatrix {
    let qe = cfg.lattice.q();
    let (scale, cols) = if k == 2 { (2.0, cfg.state_dim().pow(2)) } else { (-1.0, cfg.state_dim().pow(3)) };
    let mut trip: Vec<(usize, usize, C64)> = Vec::new();
    for q in 1..=qe {
        let g = real_sparse(qe, &gamma_matrix(coeffs, q - 1));
        if g.nnz() == 0 {
            continue;
        }
        let b = if k == 2 { b2_matrix(cfg, q) } else { b3_matrix(cfg, q) };
        trip.extend(b.kron(&g).triplets().map(|(r, c, v)| (r, c, v * scale)));
    }
    SparseMatrix::from_triplets(cfg.state_dim(), cols, trip).expect("in range")
}

/// `F_2 = 2 sum_q B_{2,q} (x) Gamma_q`.
pub fn f2_matrix(cfg: &LbeConfig, coeffs: &CollisionCoefficients) -> SparseMatrix {
    fk_matrix(cfg, coeffs, 2)
}

/// `F_3 = -sum_q B_{3,q} (x) Gamma_q`.
pub fn f3_matrix(cfg: &LbeConfig, coeffs: &CollisionCoefficients) -> SparseMatrix {
    fk_matrix(cfg, coeffs, 3)
}

/// Cubic ODE `df/dt = F_1 f + F_2 f^(x)2 + F_3 f^(x)3` on `log(Qn)` qubits.
pub fn lbe_ode(cfg: &LbeConfig) -> Result<PolynomialODE<f64>> {
    cfg.lattice.require_padded()?;
    let coeffs = collision_coeffs(cfg)?;
    let blocks = vec![None, Some(f1_matrix(cfg, &coeffs)), Some(f2_matrix(cfg, &coeffs)), Some(f3_matrix(cfg, &coeffs))];
    Ok(PolynomialODE::from_blocks(cfg.qn(), blocks)?)
}
