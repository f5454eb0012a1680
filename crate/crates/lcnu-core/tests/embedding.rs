mod support;

use std::sync::Arc;

use lcnu_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use support::*;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn rho_factor(k: u8) -> Factor {
    BasisFactor::Rho(Rho::from_index(k).unwrap())
}

fn random_sparse(rows: usize, cols: usize, rng: &mut impl Rng) -> SparseMatrix {
    let t: Vec<_> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .map(|(r, c)| (r, c, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    SparseMatrix::from_triplets(rows, cols, t).unwrap()
}

#[test]
fn commutation_reverses_kronecker_products() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (qm, qn, qr, qq) in [(1, 1, 1, 1), (2, 1, 1, 2), (0, 2, 2, 1), (1, 2, 2, 0)] {
        let (m, n, r, q) = (1usize << qm, 1usize << qn, 1usize << qr, 1usize << qq);
        let a = random_sparse(m, n, &mut rng);
        let b = random_sparse(r, q, &mut rng);
        let k1 = BasisFactor::<f64>::Permutation(Permutation::commutation(qr, qm)).materialize().unwrap();
        let k2 = BasisFactor::<f64>::Permutation(Permutation::commutation(qn, qq)).materialize().unwrap();
        let lhs = k1.matmul(&a.kron(&b)).unwrap().matmul(&k2).unwrap();
        assert!(lhs.max_abs_diff(&b.kron(&a)).unwrap() < 1e-14, "K identity failed for {qm},{qn},{qr},{qq}");
    }
}

#[test]
fn commutation_special_cases() {
    let k = BasisFactor::<f64>::Permutation(Permutation::commutation(0, 3)).materialize().unwrap();
    assert_eq!(k, SparseMatrix::identity(8));
    let k = BasisFactor::<f64>::Permutation(Permutation::commutation(1, 1)).materialize().unwrap();
    assert_eq!(from_sparse(&k), perm(&[0, 2, 1, 3]));
}

#[test]
fn nested_expressions_flatten_by_mixed_products() {
    let x = BasisFactor::Pauli(Pauli::X);
    let k = BasisFactor::Permutation(Permutation::commutation(1, 1));
    // rho1 (x) (K * (rho2 (x) I))
    let e = OpExpr::Kron(vec![
        OpExpr::leaf(rho_factor(1)),
        OpExpr::Prod(vec![OpExpr::leaf(k.clone()), OpExpr::Kron(vec![OpExpr::leaf(rho_factor(2)), OpExpr::id(1)])]),
    ]);
    let t = TermExpr::from_expr(one(), &e);
    assert_eq!(t.layers.len(), 2);
    let dense = kron(&rho(1), &mul(&perm(&[0, 2, 1, 3]), &kron(&rho(2), &eye(2))));
    assert!(max_diff(&from_sparse(&t.materialize().unwrap()), &dense) < 1e-15);
    let e = OpExpr::Kron(vec![OpExpr::Prod(vec![OpExpr::leaf(x.clone()), OpExpr::leaf(x)]), OpExpr::leaf(k)]);
    let t = TermExpr::from_expr(one(), &e);
    assert_eq!(t.layers.len(), 2);
    assert!(max_diff(&from_sparse(&t.materialize().unwrap()), &kron(&eye(2), &perm(&[0, 2, 1, 3]))) < 1e-15);
}

fn arb_term() -> impl Strategy<Value = Term> {
    let layer = proptest::collection::vec(0u8..6, 3).prop_map(|ks| {
        ks.into_iter()
            .map(|k| match k {
                0..=3 => rho_factor(k),
                4 => BasisFactor::Identity(1),
                _ => BasisFactor::Pauli(Pauli::Z),
            })
            .collect::<Vec<_>>()
    });
    let p = Just((0..8usize).collect::<Vec<_>>()).prop_shuffle();
    (layer, p, 0u8..3).prop_map(|(l, p, kind)| {
        let f = BasisFactor::Permutation(Permutation::new("P", 3, PermTag::Explicit(Arc::new(p))).unwrap());
        let k = BasisFactor::Permutation(Permutation::commutation(1, 2));
        let layers = match kind {
            0 => vec![l],
            1 => vec![vec![f], l],
            _ => vec![vec![k], l, vec![f]],
        };
        TermExpr::new(C64::new(0.5, -0.25), layers).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_is_unitary_with_l_in_the_corner(t in arb_term()) {
        let Ok(e) = embed_term(&t) else {
            // only trivial or non-embeddable terms are rejected
            let nontrivial = t.materialize_operator().unwrap().nnz() > 0;
            let in_r = matches!(gram_signature(&t).unwrap(), GramOutcome::InR(_));
            prop_assert!(!(nontrivial && in_r));
            return Ok(());
        };
        let u = unitary_block(&e).unwrap();
        prop_assert!(u.unitarity_defect().unwrap() < 1e-12);
        let rows: Vec<usize> = (0..8).collect();
        let l = t.materialize_operator().unwrap();
        prop_assert!(u.submatrix(&rows, &rows).unwrap().max_abs_diff(&l).unwrap() < 1e-14);
        let prod = e.u1_matrix().unwrap().matmul(&e.u2_matrix().unwrap()).unwrap();
        prop_assert!(prod.max_abs_diff(&u).unwrap() < 1e-12);
        let lbar = e.u2_completion.materialize().unwrap();
        prop_assert!(lbar.unitarity_defect().unwrap() < 1e-12);
    }
}

#[test]
fn completion_of_rho_string_is_x_string() {
    let t = TermExpr::kron(C64::new(3.0, 0.0), vec![rho_factor(1), rho_factor(0), rho_factor(2), rho_factor(3)]);
    let c = complete_term(&t).unwrap();
    assert_eq!(c.coeff, one());
    let m = c.materialize().unwrap();
    assert_eq!(from_sparse(&m), kron(&kron(&perm(&[1, 0]), &eye(2)), &kron(&perm(&[1, 0]), &eye(2))));
}

#[test]
fn decompositions_reject_trivial_terms_and_validate() {
    let mut d = Decomposition::new(2);
    let t = TermExpr::new(one(), vec![vec![rho_factor(1), BasisFactor::Identity(1)], vec![rho_factor(1), rho_factor(0)]]).unwrap();
    assert_eq!(d.push(t, TermLabel::Generic), Err(CoreError::Trivial));
    d.push(TermExpr::kron(C64::new(2.0, 0.0), vec![rho_factor(1), rho_factor(2)]), TermLabel::Generic).unwrap();
    d.push(TermExpr::kron(C64::new(-1.0, 0.0), vec![BasisFactor::Identity(1), rho_factor(3)]), TermLabel::Generic).unwrap();
    let reference = SparseMatrix::from_triplets(
        4,
        4,
        vec![(1, 2, C64::new(2.0, 0.0)), (1, 1, C64::new(-1.0, 0.0)), (3, 3, C64::new(-1.0, 0.0))],
    )
    .unwrap();
    assert!(validate_lcnu(&d, &reference).unwrap() < 1e-15);
}

#[test]
fn matrix_market_round_trip() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let m = random_sparse(5, 3, &mut rng).pruned(0.3);
    let mut buf = Vec::new();
    write_matrix_market(&m, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix coordinate complex general"));
    let back: SparseMatrix = read_matrix_market(&buf[..]).unwrap();
    assert_eq!(back, m);
    let real = "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 1\n2 1 4.5\n";
    let r: SparseMatrix = read_matrix_market(real.as_bytes()).unwrap();
    assert_eq!(r.get(1, 0), C64::new(4.5, 0.0));
    assert!(read_matrix_market::<f64, _>("%%MatrixMarket matrix array real general\n".as_bytes()).is_err());
}

#[test]
fn works_in_single_precision() {
    let t = TermExpr::<f32>::kron(num_complex::Complex::new(1.0f32, 0.0), vec![
        BasisFactor::Rho(Rho::R1),
        BasisFactor::Permutation(Permutation::incrementer(2, 1)),
    ]);
    let e = embed_term(&t).unwrap();
    assert!(unitary_block(&e).unwrap().unitarity_defect().unwrap() < 1e-6);
}

fn brute_force_pauli(m: &SparseMatrix, tol: f64) -> Vec<(String, C64)> {
    let q = m.nrows().trailing_zeros() as usize;
    let letters = ['I', 'X', 'Y', 'Z'];
    let base = [eye(2), perm(&[1, 0]), {
        let mut y = zeros(2, 2);
        y[0][1] = C64::new(0.0, -1.0);
        y[1][0] = C64::new(0.0, 1.0);
        y
    }, {
        let mut z = eye(2);
        z[1][1] = C64::new(-1.0, 0.0);
        z
    }];
    let dense = from_sparse(m);
    let mut out = Vec::new();
    for code in 0..4usize.pow(q as u32) {
        let mut p = eye(1);
        let mut label = String::new();
        for k in 0..q {
            let l = (code / 4usize.pow((q - 1 - k) as u32)) % 4;
            p = kron(&p, &base[l]);
            label.push(letters[l]);
        }
        let n = dense.len();
        let mut tr = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                tr += p[j][i].conj() * dense[j][i];
            }
        }
        let c = tr / n as f64;
        if c.norm() > tol {
            out.push((label, c));
        }
    }
    out
}

#[test]
fn fast_pauli_transform_matches_trace_formula() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for q in 1..=4 {
        let n = 1 << q;
        let m = random_sparse(n, n, &mut rng).pruned(0.6);
        let mut fast: Vec<(String, C64)> =
            pauli_decompose(&m, 1e-12).unwrap().into_iter().map(|t| (t.label(), t.coeff)).collect();
        let mut slow = brute_force_pauli(&m, 1e-12);
        fast.sort_by(|a, b| a.0.cmp(&b.0));
        slow.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(fast.len(), slow.len());
        assert_eq!(pauli_count(&m, 1e-12).unwrap(), slow.len());
        for ((la, ca), (lb, cb)) in fast.iter().zip(&slow) {
            assert_eq!(la, lb);
            assert!((ca - cb).norm() < 1e-12);
        }
        let back = pauli_decompose(&m, 0.0).unwrap().iter().fold(SparseMatrix::zeros(n, n), |acc, t| {
            acc.add(&t.materialize().unwrap()).unwrap()
        });
        assert!(back.max_abs_diff(&m).unwrap() < 1e-12);
    }
}
