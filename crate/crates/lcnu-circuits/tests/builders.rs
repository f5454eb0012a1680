use lcnu_circuits::*;
use lcnu_core::{BasisFactor, PermTag, Permutation, SparseMatrix, UnitaryFactor, C64};
use lcnu_lbe::{b2_matrix, padded_builtin, LbeConfig};

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn column(c: &Circuit64, x: usize) -> Vec<(usize, C64)> {
    run_basis(c, x).into_iter().map(|(r, v)| (r, v * c.global_scale)).collect()
}

fn is_zero_one(m: &SparseMatrix) -> bool {
    m.triplets().all(|(_, _, v)| v == one())
}

#[test]
fn pk_prepares_target() {
    let c: Circuit64 = circuit_pk(2, 2).unwrap();
    assert_eq!(c.len(), 1);
    let c: Circuit64 = circuit_pk(2, 4).unwrap();
    assert_eq!(c.gates, vec![Gate::x(0), Gate::x(1)]);
    let c: Circuit64 = circuit_pk(3, 2).unwrap();
    let m = simulate(&c).unwrap();
    // b = 2^2 - (1 + 2)
    assert_eq!(m.get(1, 0), one());
    assert!(circuit_pk::<f64>(1, 2).is_err());
}

#[test]
fn m_ladder_removes_copy() {
    let c: Circuit64 = circuit_m(2, 2).unwrap();
    assert_eq!(c.count(Gate::is_mcx), 1);
    let map = permutation_map(&c).unwrap();
    assert_eq!((map[3], map[0]), (1, 0));
    let c: Circuit64 = circuit_m(4, 4).unwrap();
    assert_eq!(c.len(), 2);
    let map = permutation_map(&c).unwrap();
    for i in 0..4 {
        assert_eq!(map[i * 5], i);
    }
    assert!(circuit_m::<f64>(2, 4).is_err());
}

#[test]
fn b2q_selects_rows() {
    let cfg = LbeConfig::minimal(padded_builtin("D1Q3").unwrap(), 1.0).unwrap();
    let (q, n) = (cfg.lattice.q(), cfg.sites());
    for qi in 1..=q {
        let c: Circuit64 = circuit_b2q(qi as u32, q as u128, n as u128).unwrap();
        let b = b2_matrix(&cfg, qi);
        for i in 0..n {
            let (cols, _) = b.row(i);
            assert_eq!(column(&c, cols[0]), vec![(i, one())]);
        }
        assert_eq!(c.count(Gate::is_mcx), 1);
        if qi == 1 {
            assert_eq!(c.count(|g| !g.is_mcx()), 0);
        }
    }
    let c: Circuit64 = circuit_b2q(3, 4, 4).unwrap();
    assert_eq!(c.count(Gate::is_mcx), 2);
    assert!(c.count(|g| !g.is_mcx()) <= 2);
    assert!(circuit_b2q::<f64>(5, 4, 2).is_err());
    assert!(circuit_b2q::<f64>(0, 4, 2).is_err());
}

#[test]
fn b3q_maps_superposition_to_site() {
    let (big_q, n, q) = (4usize, 2usize, 2usize);
    let c: Circuit64 = circuit_b3q(q as u32, big_q as u128, n as u128).unwrap();
    assert_eq!(c.count(|g| matches!(g.kind, GateKind::H(_))), 2);
    assert_eq!(c.count(Gate::is_mcx), 2);
    assert!((c.global_scale - 0.5).abs() < 1e-15);
    let m = simulate(&c).unwrap();
    let qn = big_q * n;
    for i in 0..n {
        let mut x = vec![C64::new(0.0, 0.0); m.ncols()];
        for j in 0..big_q {
            x[j * big_q * n * n + i * (qn * qn + qn + 1) + (q - 1) * n] = one();
        }
        let y = m.mul_vec(&x).unwrap();
        for (r, v) in y.iter().enumerate() {
            let want = if r == i { 1.0 } else { 0.0 };
            assert!((v - C64::new(want, 0.0)).norm() < 1e-12, "i = {i}, row {r}");
        }
    }
    let u = BasisFactor::Unitary(UnitaryFactor::<f64>::bbar3(2, 1, 2)).materialize().unwrap();
    assert!(m.max_abs_diff(&u.scale_real(0.5)).unwrap() < 1e-12);
}

#[test]
fn commutation_networks() {
    let c: Circuit64 = circuit_commutation(2, 2).unwrap();
    assert_eq!(c.gates, vec![Gate::swap(0, 1)]);
    let c: Circuit64 = circuit_commutation(4, 2).unwrap();
    assert_eq!(c.len(), 2);
    let k = lcnu_carleman::commutation_perm::<f64>(4, 2).unwrap().materialize().unwrap();
    assert_eq!(simulate(&c).unwrap().max_abs_diff(&k).unwrap(), 0.0);
    assert!(circuit_commutation::<f64>(8, 1).unwrap().is_empty());
    for qa in 0..4u32 {
        for qb in 0..4u32 {
            let c: Circuit64 = circuit_commutation(1 << qa, 1 << qb).unwrap();
            assert_eq!(c.len(), (qa * qb) as usize);
            assert_eq!(permutation_map(&c).unwrap(), Permutation::commutation(qa, qb).index_map().unwrap());
        }
    }
}

#[test]
fn incrementers() {
    let c: Circuit64 = circuit_incrementer(2, false).unwrap();
    assert_eq!(c.gates, vec![Gate::x(0)]);
    let c: Circuit64 = circuit_incrementer(4, false).unwrap();
    assert_eq!(c.gates, vec![Gate::cx(0, 1), Gate::x(0)]);
    assert_eq!(permutation_map(&c).unwrap(), vec![1, 2, 3, 0]);
    let c: Circuit64 = circuit_incrementer(4, true).unwrap();
    let map = permutation_map(&c).unwrap();
    assert_eq!(&map[..4], &[0, 1, 2, 3]);
    assert_eq!(&map[4..], &[5, 6, 7, 4]);
    for q in 1..6u32 {
        for shift in [-3i64, -1, 1, 2, 5] {
            let c: Circuit64 = incrementer_qubits(q, shift).unwrap();
            assert_eq!(permutation_map(&c).unwrap(), Permutation::incrementer(q, shift).index_map().unwrap());
        }
    }
}

#[test]
fn permutation_lowerings_follow_index_maps() {
    let perms = [
        Permutation::incrementer(3, -1),
        Permutation::commutation(2, 3),
        Permutation::xstring(4, 0b1010),
        Permutation::new("M", 5, PermTag::MLadder { qm: 3, qr: 2 }).unwrap(),
        Permutation::new("B2", 5, PermTag::BBar2 { qq: 1, qn: 2, q: 2 }).unwrap(),
        Permutation::new("S", 2, PermTag::Swap).unwrap(),
    ];
    for p in perms {
        let f = BasisFactor::<f64>::Permutation(p.clone());
        let (c, _) = lower_factor(&f).unwrap();
        assert_eq!(permutation_map(&c).unwrap(), p.index_map().unwrap(), "{}", p.name);
        let m = simulate(&c).unwrap();
        assert!(is_zero_one(&m));
        assert_eq!(m.max_abs_diff(&f.materialize().unwrap()).unwrap(), 0.0);
    }
    let explicit = Permutation::new("P", 1, PermTag::Explicit(std::sync::Arc::new(vec![1, 0]))).unwrap();
    assert!(matches!(lower_factor(&BasisFactor::<f64>::Permutation(explicit)), Err(CircuitError::NoLowering(_))));
}

#[test]
fn pauli_y_phase_convention() {
    let f = BasisFactor::<f64>::Pauli(lcnu_core::Pauli::Y);
    let (c, _) = lower_factor(&f).unwrap();
    assert_eq!(simulate(&c).unwrap().max_abs_diff(&f.materialize().unwrap()).unwrap(), 0.0);
}

#[test]
fn added_control_is_identity_when_off() {
    let mut c: Circuit64 = Circuit::new(2);
    c.push(Gate::h(0)).unwrap();
    c.push(Gate::new(GateKind::Y(1))).unwrap();
    c.push(Gate::swap(0, 1)).unwrap();
    let u = simulate(&c).unwrap();
    let cu = simulate(&add_control(&c)).unwrap();
    let p0 = lcnu_core::BasisFactor::<f64>::Rho(lcnu_core::Rho::R0).materialize().unwrap();
    let p1 = lcnu_core::BasisFactor::<f64>::Rho(lcnu_core::Rho::R3).materialize().unwrap();
    let want = p0.kron(&SparseMatrix::identity(4)).add(&p1.kron(&u)).unwrap();
    assert!(cu.max_abs_diff(&want).unwrap() < 1e-15);
}

#[test]
fn qubit_limit_is_enforced() {
    let c: Circuit64 = Circuit::new(DEFAULT_MAX_QUBITS as usize + 1);
    assert!(matches!(simulate(&c), Err(CircuitError::QubitLimit { .. })));
}

#[test]
fn invalid_gates_are_rejected() {
    let mut c: Circuit64 = Circuit::new(2);
    assert!(c.push(Gate::x(2)).is_err());
    assert!(c.push(Gate::cx(1, 1)).is_err());
}

#[test]
fn qasm_export() {
    let mut c: Circuit64 = Circuit::new(3);
    c.push(Gate::mcx(vec![Control::open(0), Control::closed(1)], 2)).unwrap();
    c.push(Gate::h(0)).unwrap();
    let w = lcnu_core::DenseMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]);
    let u = UnitaryFactor::dense("W_R", w, lcnu_core::UnitaryRole::Generic).unwrap();
    let (sub, _) = lower_factor(&BasisFactor::Unitary(u)).unwrap();
    c.append_block(&sub, 1, BlockKind::Pauli, "W").unwrap();
    let text = to_qasm3(&c);
    assert!(text.starts_with("OPENQASM 3.0;"));
    assert!(text.contains("qubit[3] q;"));
    assert!(text.contains("negctrl @ ctrl @ x q[0], q[1], q[2];"));
    assert!(text.contains("h q[0];"));
    assert!(text.contains("gate W_R a0 { }"));
    assert!(text.contains("W_R q[1];"));
    let side = opaque_sidecar(&c);
    assert_eq!(side["W_R"]["qubits"], 1);
    assert_eq!(side["W_R"]["matrix"][0][1][0], 1.0);
}
