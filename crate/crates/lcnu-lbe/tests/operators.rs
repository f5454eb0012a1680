mod support;

use lcnu_core::{BasisFactor, OpExpr, PermTag, Permutation, Rho, Term, UnitaryFactor, C64};
use lcnu_lbe::*;
use num_rational::Rational64;
use support::*;

fn lbe(name: &str, nx: usize, ny: usize, nz: usize, tau: f64) -> LbeConfig {
    LbeConfig::new(padded_builtin(name).unwrap(), nx, ny, nz, tau).unwrap()
}

#[test]
fn builtin_tables() {
    let d1 = builtin_lattice("D1Q3").unwrap();
    assert_eq!(d1.weights, vec![Rational64::new(2, 3), Rational64::new(1, 6), Rational64::new(1, 6)]);
    let d3 = builtin_lattice("D3Q15").unwrap();
    assert_eq!(d3.weights[0], Rational64::new(2, 9));
    for name in ["D1Q3", "D2Q9", "D3Q15"] {
        let l = builtin_lattice(name).unwrap();
        l.validate().unwrap();
        assert!((l.cs - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let total: Rational64 = l.weights.iter().sum();
        assert_eq!(total, Rational64::from_integer(1));
    }
    assert!(builtin_lattice("D2Q7").is_err());
}

#[test]
fn embedding_pads_with_zeros() {
    for (name, q) in [("D1Q3", 4), ("D2Q9", 16), ("D3Q15", 16)] {
        let e = embed_lattice(&builtin_lattice(name).unwrap());
        assert_eq!(e.q(), q);
        assert_eq!(e.name, format!("{name}*"));
        let qp = e.physical_q();
        assert!(e.velocities[qp..].iter().all(|v| *v == [0, 0, 0]));
        assert!(e.weights[qp..].iter().all(|w| *w == Rational64::from_integer(0)));
        e.validate().unwrap();
    }
}

#[test]
fn taylor_coefficients_from_sound_speed() {
    let c = cfg("D2Q9");
    assert!((c.a - 1.0).abs() < 1e-15);
    assert!((c.b - 3.0).abs() < 1e-12);
    assert!((c.c - 4.5).abs() < 1e-12);
    assert!((c.d + 1.5).abs() < 1e-12);
}

#[test]
fn beta_rest_entry_at_unit_tau() {
    let c = collision_coeffs(&lbe("D1Q3", 2, 1, 1, 1.0)).unwrap();
    assert!((c.beta(0, 0) - (2.0 / 3.0 - 1.0)).abs() < 1e-15);
    // moving pair: w (a + b e.e) with e.e = -1 for opposite directions
    assert!((c.beta(1, 2) - (1.0 / 6.0) * (1.0 - 3.0)).abs() < 1e-12);
    assert!(collision_coeffs(&LbeConfig { tau: 0.0, ..lbe("D1Q3", 2, 1, 1, 1.0) }).is_err());
}

#[test]
fn gamma_symmetry_on_d2q9() {
    for fill in [GammaFill::Zero, GammaFill::Symmetric] {
        let c = collision_coeffs(&LbeConfig { gamma_fill: fill, ..cfg("D2Q9") }).unwrap();
        for q in 0..16 {
            for m in 0..16 {
                for r in 0..16 {
                    assert_eq!(c.gamma(q, m, r), c.gamma(r, m, q), "({q},{m},{r})");
                }
            }
        }
    }
}

#[test]
fn rest_row_of_gamma() {
    let cf = cfg("D2Q9");
    let c = collision_coeffs(&cf).unwrap();
    let w0 = 4.0 / 9.0;
    for q in 0..9 {
        for r in 0..9 {
            let want = w0 * cf.d * cf.lattice.dot(q, r) as f64 / cf.tau;
            assert!((c.gamma(q, 0, r) - want).abs() < 1e-14);
        }
    }
}

#[test]
fn padded_components_are_stationary() {
    use rand::Rng;
    for name in ["D1Q3", "D2Q9"] {
        let cf = cfg(name);
        let ode = lbe_ode(&cf).unwrap();
        let mut g = rng(3);
        let f: Vec<C64> = (0..cf.state_dim()).map(|_| C64::new(g.gen_range(-1.0..1.0), 0.0)).collect();
        let d = ode.rhs(&f).unwrap();
        let q = cf.lattice.q();
        for (i, v) in d.iter().enumerate() {
            if i % q >= cf.lattice.physical_q() {
                assert_eq!(*v, C64::new(0.0, 0.0), "component {i}");
            }
        }
    }
}

#[test]
fn quadratic_and_cubic_match_collision_sums() {
    let cf = cfg("D1Q3");
    let c = collision_coeffs(&cf).unwrap();
    let (q, n) = (cf.lattice.q(), cf.sites());
    let f = random_state(&cf, &mut rng(7));
    let f2 = f2_matrix(&cf, &c).mul_vec(&kron(&f, &f)).unwrap();
    let f3 = f3_matrix(&cf, &c).mul_vec(&kron(&f, &kron(&f, &f))).unwrap();
    for s in 0..n {
        let at = |m: usize| f[s * q + m].re;
        for m in 0..q {
            let (mut quad, mut cubic) = (0.0, 0.0);
            for a in 0..q {
                for b in 0..q {
                    quad += 2.0 * c.gamma(a, m, b) * at(a) * at(b);
                    for e in 0..q {
                        cubic -= c.gamma(b, m, e) * at(a) * at(b) * at(e);
                    }
                }
            }
            assert!((f2[s * q + m].re - quad).abs() < 1e-13);
            assert!((f3[s * q + m].re - cubic).abs() < 1e-13);
        }
    }
}

#[test]
fn selection_matrices_structure() {
    let cf = lbe("D1Q3", 4, 1, 1, 1.0);
    let (q, n) = (cf.lattice.q(), cf.sites());
    for qi in 1..=q {
        let b2 = b2_matrix(&cf, qi);
        assert_eq!(b2.shape(), (n, q * n * n));
        for i in 0..n {
            let (cols, vals) = b2.row(i);
            assert_eq!(cols, &[i * (q * n + 1) + (qi - 1) * n]);
            assert_eq!(vals[0], C64::new(1.0, 0.0));
        }
        let b3 = b3_matrix(&cf, qi);
        for i in 0..n {
            let (cols, _) = b3.row(i);
            assert_eq!(cols.len(), q);
            for w in cols.windows(2) {
                assert_eq!(w[1] - w[0], q * n * n);
            }
        }
    }
}

fn d_bbar(k: u32, cf: &LbeConfig, q: u32) -> lcnu_core::SparseMatrix {
    let (qq, ln, qn) = (cf.lattice.qq(), cf.log_sites(), cf.qn());
    let (bbar, dk) = if k == 2 {
        (BasisFactor::Permutation(Permutation::new("B2", 2 * ln + qq, PermTag::BBar2 { qq, qn: ln, q }).unwrap()), qn)
    } else {
        (BasisFactor::Unitary(UnitaryFactor::bbar3(qq, ln, q)), 2 * qn)
    };
    let mut parts: Vec<OpExpr<f64>> = (0..dk).map(|_| OpExpr::leaf(BasisFactor::Rho(Rho::R0))).collect();
    parts.push(OpExpr::id(ln));
    Term::from_expr(C64::new(1.0, 0.0), &OpExpr::Prod(vec![OpExpr::Kron(parts), OpExpr::leaf(bbar)]))
        .materialize()
        .unwrap()
}

fn stacked(b: &lcnu_core::SparseMatrix) -> lcnu_core::SparseMatrix {
    lcnu_core::SparseMatrix::from_triplets(b.ncols(), b.ncols(), b.triplets()).unwrap()
}

#[test]
fn quadratic_selection_lifts_exactly() {
    for (name, nx) in [("D1Q3", 2), ("D1Q3", 4)] {
        let cf = lbe(name, nx, 1, 1, 1.0);
        for q in 1..=cf.lattice.q() {
            let lhs = stacked(&b2_matrix(&cf, q));
            let rhs = d_bbar(2, &cf, q as u32);
            assert_eq!(lhs.max_abs_diff(&rhs).unwrap(), 0.0, "q = {q}");
        }
    }
}

#[test]
fn cubic_selection_lifts_with_scale() {
    let cf = lbe("D1Q3", 2, 1, 1, 1.0);
    let s = 2f64.powf(cf.lattice.qq() as f64 / 2.0);
    for q in 1..=cf.lattice.q() {
        let lhs = stacked(&b3_matrix(&cf, q));
        let rhs = d_bbar(3, &cf, q as u32);
        assert!(lhs.max_abs_diff(&rhs.scale_real(s)).unwrap() < 1e-12, "q = {q}");
        assert!((rhs.max_abs() * s - lhs.max_abs()).abs() < 1e-12);
    }
}

#[test]
fn streaming_terms_match_stencil() {
    for (nx, ny, nz, name) in [(4, 1, 1, "D1Q3"), (4, 2, 1, "D2Q9"), (2, 2, 2, "D3Q15")] {
        let cf = lbe(name, nx, ny, nz, 1.0);
        let sub = compute_subdecompositions(&cf).unwrap();
        let (terms, f1) = build_f1(&cf, &sub).unwrap();
        let stream: Vec<_> = terms.iter().filter(|t| matches!(t.source, FSource::Stream { .. })).cloned().collect();
        let s = streaming_matrix(&cf);
        assert!(materialize_sum(&stream).unwrap().max_abs_diff(&s).unwrap() < 1e-12, "{name}");
        assert!(materialize_sum(&terms).unwrap().max_abs_diff(&f1).unwrap() < 1e-10, "{name}");
        assert_eq!(s.add(&s.transpose()).unwrap().max_abs(), 0.0);
    }
}

#[test]
fn streaming_wraps_periodically() {
    let cf = lbe("D1Q3", 4, 1, 1, 1.0);
    let s = lcnu_core::BasisFactor::<f64>::Permutation(Permutation::incrementer(2, 1)).materialize().unwrap();
    // row 0 of S_{+1} holds its one in the last column
    let (cols, _) = s.row(0);
    assert_eq!(cols, &[3]);
    let st = streaming_matrix(&cf);
    let q = cf.lattice.q();
    // velocity +1 at site 0 reads site 1 and the wrapped site 3
    assert_eq!(st.get(1, q + 1).re, -0.5);
    assert_eq!(st.get(1, 3 * q + 1).re, 0.5);
}

#[test]
fn quadratic_and_cubic_terms_reconstruct_lifted_blocks() {
    let cf = cfg("D1Q3");
    let sub = compute_subdecompositions(&cf).unwrap();
    let (t2, f2) = build_f2(&cf, &sub).unwrap();
    let (t3, f3) = build_f3(&cf, &sub).unwrap();
    assert!(materialize_sum(&t2).unwrap().max_abs_diff(&stacked(&f2)).unwrap() < 1e-10);
    assert!(materialize_sum(&t3).unwrap().max_abs_diff(&stacked(&f3)).unwrap() < 1e-10);
}

#[test]
fn unpadded_lattice_is_rejected() {
    let cf = LbeConfig::minimal(builtin_lattice("D1Q3").unwrap(), 1.0).unwrap();
    assert!(matches!(lbe_ode(&cf), Err(LbeError::NotPadded(_))));
    assert!(compute_subdecompositions(&cf).is_err());
}

#[test]
fn custom_lattice_from_toml() {
    let text = r#"
        name = "D1Q3"
        dims = 1
        cs2 = "1/3"
        velocities = [[0], [1], [-1]]
        weights = ["2/3", "1/6", "1/6"]
    "#;
    let l = LatticeSpec::from_toml(text).unwrap();
    let b = builtin_lattice("D1Q3").unwrap();
    assert_eq!((l.dims, &l.velocities, &l.weights), (b.dims, &b.velocities, &b.weights));
    assert!((l.cs - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    let bad = text.replace("\"1/6\", \"1/6\"", "\"1/6\", \"1/3\"");
    assert!(matches!(LatticeSpec::from_toml(&bad), Err(LbeError::InvalidLattice(_))));
    assert!(matches!(LatticeSpec::from_toml("name = 3"), Err(LbeError::Parse(_))));
}
