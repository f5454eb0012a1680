mod support;

use lcnu_carleman::*;
use lcnu_core::{SparseMatrix, C64};
use rand::{Rng, SeedableRng};
use support::*;

fn random_vec(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn power(f: &[C64], j: usize) -> Vec<C64> {
    (0..j).fold(vec![c(1.0)], |acc, _| kron_vec(&acc, f))
}

// d/dt f^{(x)j} = sum_l f^{(x)l} (x) f' (x) f^{(x)(j-l-1)}
#[test]
fn transfer_blocks_reproduce_the_derivative_of_tensor_powers() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (qn, nf) in [(1, 2), (1, 3), (2, 2)] {
        let ode = random_ode(qn, nf, &mut rng);
        let f = random_vec(ode.n(), &mut rng);
        let df = ode.rhs(&f).unwrap();
        for j in 1..=3 {
            let mut expect = vec![c(0.0); ode.n().pow(j as u32)];
            for l in 0..j {
                let term = kron_vec(&kron_vec(&power(&f, l), &df), &power(&f, j - l - 1));
                for (e, t) in expect.iter_mut().zip(term) {
                    *e += t;
                }
            }
            let mut got = vec![c(0.0); expect.len()];
            for k in 0..=nf {
                let blk = transfer_block(&ode, j, k).unwrap();
                for (g, v) in got.iter_mut().zip(blk.mul_vec(&power(&f, j + k - 1)).unwrap()) {
                    *g += v;
                }
            }
            assert!(max_diff(&got, &expect) < 1e-12, "qn={qn} nf={nf} j={j}");
        }
    }
}

#[test]
fn carleman_matrix_places_blocks_and_drops_the_truncated_ones() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let ode = random_ode(1, 2, &mut rng);
    let cfg = CarlemanConfig::new(3, 2, 0.1).unwrap();
    let sys = assemble_carleman(&ode, &cfg, None).unwrap();
    assert_eq!(sys.a.shape(), (14, 14));
    let n = 2;
    let part = |r: usize, cblk: usize| {
        let rows: Vec<usize> = (block_start(n, r)..block_start(n, r + 1)).collect();
        let cols: Vec<usize> = (block_start(n, cblk)..block_start(n, cblk + 1)).collect();
        sys.a.submatrix(&rows, &cols).unwrap()
    };
    for r in 1..=3 {
        for cb in 1..=3 {
            let expect = if cb + 1 == r && r >= 2 {
                transfer_block(&ode, r, 0).unwrap()
            } else if cb == r {
                transfer_block(&ode, r, 1).unwrap()
            } else if cb == r + 1 {
                transfer_block(&ode, r, 2).unwrap()
            } else {
                SparseMatrix::zeros(n.pow(r as u32), n.pow(cb as u32))
            };
            assert!(part(r, cb).max_abs_diff(&expect).unwrap() < 1e-15, "block ({r},{cb})");
        }
    }
    assert_eq!(&sys.b[..2], &ode.block(0).unwrap().to_dense()[..]);
    assert!(sys.b[2..].iter().all(|v| *v == c(0.0)));
}

#[test]
fn linear_ode_needs_only_first_order() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    let ode = PolynomialODE::from_blocks(1, vec![None, Some(random_block(2, 2, 1.0, &mut rng))]).unwrap();
    assert!(CarlemanConfig::new(1, 4, 0.1).unwrap().check_for(&ode).is_ok());
    let nl = random_ode(1, 2, &mut rng);
    assert!(CarlemanConfig::new(1, 4, 0.1).unwrap().check_for(&nl).is_err());
    assert!(CarlemanConfig::new(2, 3, 0.1).is_err());
    assert!(CarlemanConfig::new(2, 4, -0.1).is_err());
}

#[test]
fn time_stepping_solution_matches_backward_euler_iteration() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let ode = random_ode(1, 2, &mut rng);
    let cfg = CarlemanConfig::new(2, 4, 0.05).unwrap();
    let f0 = random_vec(2, &mut rng);
    let y0 = initial_state(&f0, 2);
    let sys = assemble_carleman(&ode, &cfg, Some(&y0)).unwrap();
    let y = dense_solve(&sys.l, &sys.rhs);
    let d = y0.len();
    let step = SparseMatrix::identity(d).sub(&sys.a.scale_real(cfg.dt)).unwrap();
    let mut prev = y0.clone();
    assert!(max_diff(&y[..d], &prev) < 1e-12);
    for r in 1..cfg.n_t {
        let rhs: Vec<C64> = prev.iter().zip(&sys.b).map(|(p, b)| p + b * cfg.dt).collect();
        prev = dense_solve(&step, &rhs);
        assert!(max_diff(&y[r * d..(r + 1) * d], &prev) < 1e-12, "step {r}");
    }
}

#[test]
fn padding_embeds_the_system_without_changing_it() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let ode = random_ode(1, 2, &mut rng);
    for alpha in 2..=3 {
        let cfg = CarlemanConfig::new(alpha, 4, 0.1).unwrap();
        let f0 = random_vec(2, &mut rng);
        let sys = assemble_carleman(&ode, &cfg, Some(&initial_state(&f0, alpha))).unwrap();
        let pad = pad_system(&sys, &cfg).unwrap();
        assert_eq!(pad.block_size(), 2 * 2usize.pow(alpha as u32));
        assert_eq!(pad.qubits(), 2 + alpha as u32 + 1);
        let full = pad.full_layout();
        // padded blocks sit at the tail of [0, 2N^alpha)
        assert_eq!(*pad.layout.last().unwrap(), pad.block_size() - 1);
        assert!(pad.layout.windows(2).all(|w| w[0] + 1 == w[1]));
        assert!(pad.l_e.submatrix(&full, &full).unwrap().max_abs_diff(&sys.l).unwrap() < 1e-15);
        // rows of padding carry no coupling into the embedded system
        let inside: std::collections::HashSet<usize> = full.iter().copied().collect();
        for (r, col, v) in pad.l_e.triplets() {
            if v.norm() > 0.0 {
                assert_eq!(inside.contains(&r), inside.contains(&col));
            }
        }
        for (i, v) in pad.b_e.iter().enumerate() {
            if !inside.contains(&i) {
                assert_eq!(*v, c(0.0));
            }
        }
        let y = dense_solve(&sys.l, &sys.rhs);
        let ye = dense_solve(&pad.l_e, &pad.b_e);
        let restricted: Vec<C64> = full.iter().map(|&p| ye[p]).collect();
        assert!(max_diff(&restricted, &y) < 1e-11);
        for (i, v) in ye.iter().enumerate() {
            if !inside.contains(&i) {
                assert!(v.norm() < 1e-12);
            }
        }
        let json: Vec<[usize; 2]> = serde_json::from_str(&pad.layout_json()).unwrap();
        assert_eq!(json.len(), full.len());
    }
}

fn carleman_trajectory(ode: &PolynomialODE<f64>, init: &[C64], alpha: usize, dt: f64, nt: usize) -> Vec<Vec<C64>> {
    let cfg = CarlemanConfig::new(alpha, nt, dt).unwrap();
    let sys = assemble_carleman(ode, &cfg, None).unwrap();
    let d = sys.a.nrows();
    let step = SparseMatrix::identity(d).sub(&sys.a.scale_real(dt)).unwrap();
    let mut y = initial_state(init, alpha);
    let mut out = vec![y[..init.len()].to_vec()];
    for _ in 1..nt {
        let rhs: Vec<C64> = y.iter().zip(&sys.b).map(|(p, b)| p + b * dt).collect();
        y = dense_solve(&step, &rhs);
        out.push(y[..init.len()].to_vec());
    }
    out
}

#[test]
fn truncation_error_falls_with_the_order() {
    // two decoupled copies of f' = -f + cq f^2; a high order stands in for the untruncated lift
    let cq = 0.8;
    let f1 = SparseMatrix::from_triplets(2, 2, vec![(0, 0, c(-1.0)), (1, 1, c(-1.0))]).unwrap();
    let f2 = SparseMatrix::from_triplets(2, 4, vec![(0, 0, c(cq)), (1, 3, c(cq))]).unwrap();
    let ode = PolynomialODE::from_blocks(1, vec![None, Some(f1), Some(f2)]).unwrap();
    let init = [c(0.4), c(0.25)];
    let (dt, nt) = (0.05, 8);
    let reference = carleman_trajectory(&ode, &init, 8, dt, nt);
    let errs: Vec<f64> = (2..=5)
        .map(|alpha| {
            let y = carleman_trajectory(&ode, &init, alpha, dt, nt);
            y.iter().zip(&reference).map(|(a, b)| max_diff(a, b)).fold(0.0, f64::max)
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[3] < 1e-3, "{errs:?}");
}
