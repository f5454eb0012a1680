//! Enumerated SELECT sums against the closed forms.

use lcnu_resources::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LATTICES: [&str; 3] = ["D1Q3", "D2Q9", "D3Q15"];

fn params(name: &str, alpha: usize, log_nx: u32) -> (CostParams, GateCostTable) {
    let counts = LatticeCounts::builtin(name).unwrap();
    (CostParams::cubic(counts, alpha, log_nx).unwrap(), GateCostTable::for_lattice(name).unwrap())
}

fn assert_exact(p: &CostParams, table: &GateCostTable) {
    let s = select_cost_enumerated(p, table);
    let f = exact_forms(p, table);
    let ctx = format!("{} alpha={} axes={:?} nt=2^{}", p.counts.name, p.alpha, p.log_axes, p.log_nt);
    assert_eq!(s.l1.total() as i128, f.l1, "{ctx}");
    assert_eq!((s.lin1.u1 as i128, s.lin1.u2 as i128), (f.lin1_u1, f.lin1_u2), "{ctx}");
    assert_eq!((s.lin2.u1 as i128, s.lin2.u2 as i128), (f.lin2_u1, f.lin2_u2), "{ctx}");
    assert_eq!((s.nlin.u1 as i128, s.nlin.u2 as i128), (f.nlin_u1, f.nlin_u2), "{ctx}");
    assert_eq!(s.overhead as i128, f.overhead, "{ctx}");
    assert_eq!(s.total() as i128, f.total(), "{ctx}");
    assert_eq!(s.n_s, term_count(&p.counts, p.alpha));
}

#[test]
fn enumerated_sums_equal_exact_closed_forms() {
    for name in LATTICES {
        for alpha in 2..=4 {
            for log_nx in 1..=6 {
                let (p, table) = params(name, alpha, log_nx);
                assert_exact(&p, &table);
            }
        }
    }
}

#[test]
fn exact_forms_hold_on_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let dims = rng.gen_range(1..=3usize);
        let mut n_e = [0; 3];
        let mut axes = [0; 3];
        for a in 0..dims {
            n_e[a] = rng.gen_range(0..15);
            axes[a] = rng.gen_range(1..8);
        }
        let log_q = rng.gen_range(1..6);
        let counts = LatticeCounts {
            name: "random".into(),
            dims,
            log_q,
            n_e,
            n_r: rng.gen_range(0..20),
            n_gamma_q: (0..1usize << log_q).map(|_| rng.gen_range(0..12)).collect(),
        };
        let table = GateCostTable::new(SvdConstants { collision: rng.gen_range(0..500), tensor: rng.gen_range(0..500) });
        let p = CostParams::new(counts, rng.gen_range(1..7), rng.gen_range(1..8), axes).unwrap();
        assert_exact(&p, &table);
    }
}

#[test]
fn published_unit_step_form_needs_three_controls() {
    for log_nt in 1..8 {
        let (mut p, table) = params("D1Q3", 3, 2);
        p.log_nt = log_nt;
        let gap = select_cost_enumerated(&p, &table).l1.total() as i128 - (20 * log_nt as i128 + 8);
        assert_eq!(gap, if log_nt == 1 { 3 } else { 0 });
    }
}

#[test]
fn published_stream_and_collision_forms_miss_only_the_toffoli_terms() {
    // each i = 1, j = alpha term has a two-control MCX: 7 instead of 8 * 2 - 12
    for alpha in 2..=4 {
        for log_nx in 1..=6 {
            let (p, table) = params("D1Q3", alpha, log_nx);
            let s = select_cost_enumerated(&p, &table);
            let pf = published_forms(&p, &table);
            let a = alpha as i128;
            let ne = p.counts.n_e[0] as i128;
            // the published stream form counts three equal axes; D1Q3 has one
            let stream = Rational::from_integer(s.lin1.total() as i128) * 3 - pf.lin1;
            assert_eq!(stream, Rational::from_integer(18 * a * ne), "alpha={alpha} nx=2^{log_nx}");
            let coll = Rational::from_integer(s.lin2.total() as i128) - pf.lin2;
            assert_eq!(coll, Rational::from_integer(3 * a * p.counts.n_r as i128));
        }
    }
}

#[test]
fn published_nonlinear_form_differs_in_the_index_map_costs() {
    // the published form prices Bbar_{k,q} at 7(k+1) log n + 2(k-2) log Q summed
    // as 28 log n + 2 log Q over every term; the gate table gives 7 log n and 21 log n + 2 log Q
    for alpha in 2..=4 {
        let (p, table) = params("D3Q15", alpha, 3);
        let s = select_cost_enumerated(&p, &table);
        let pf = published_forms(&p, &table);
        let (a, ng, ln, lq) = (alpha as i128, p.counts.n_gamma() as i128, p.log_n() as i128, p.counts.log_q as i128);
        let ours = ng * (a - 1) * (7 * a * ln + (a - 2) * (21 * ln + 2 * lq));
        let theirs = ng * (a - 1) * (a - 1) * (56 * ln + 4 * lq);
        assert_eq!(pf.nlin - Rational::from_integer(s.nlin.total() as i128), Rational::from_integer(theirs - ours));
    }
}

#[test]
fn leading_coefficient_from_second_differences() {
    for alpha in 3..=4 {
        let counts = LatticeCounts::builtin("D3Q15").unwrap();
        let table = GateCostTable::for_lattice("D3Q15").unwrap();
        let total = |lx: u32| {
            let p = CostParams::new(counts.clone(), alpha, 5, [lx; 3]).unwrap();
            select_cost_enumerated(&p, &table).groups_total() as f64
        };
        // log Qn = 4 + 3 lx, so a step of one in lx is a step of three in log Qn
        let (x0, h) = (40u32, 1u32);
        let second = total(x0 + 2 * h) - 2.0 * total(x0 + h) + total(x0);
        let fitted = second / (2.0 * 9.0);
        let a = alpha as f64;
        let expected = 7.0 / 3.0 * counts.n_gamma() as f64 * (a - 1.0) * (a - 2.0) * (7.0 * a - 12.0);
        assert!((fitted / expected - 1.0).abs() < 0.01, "fitted {fitted} expected {expected}");
    }
}

#[test]
fn leading_term_dominates_at_large_sizes() {
    let counts = LatticeCounts::builtin("D3Q15").unwrap();
    let table = GateCostTable::for_lattice("D3Q15").unwrap();
    let ratio = |lx: u32| {
        let p = CostParams::cubic(counts.clone(), 4, lx).unwrap();
        let total = select_cost_enumerated(&p, &table).total() as f64 + prep_cost(term_count(&counts, 4), 1e-12).unwrap() as f64;
        total / lcnu_resources::closed::to_f64(leading_term(&p))
    };
    let mut last = f64::INFINITY;
    for lx in [2u32, 4, 8, 16, 32, 64, 128] {
        let r = ratio(lx);
        assert!(r > 1.0 && r < last, "lx={lx} ratio={r}");
        last = r;
    }
    assert!(last < 1.01, "ratio {last}");
}

#[test]
fn costs_are_monotone() {
    let table = GateCostTable::for_lattice("D2Q9").unwrap();
    let counts = LatticeCounts::builtin("D2Q9").unwrap();
    let cost = |alpha: usize, lx: u32, lt: u32, lq: u32| {
        let c = LatticeCounts { log_q: lq, ..counts.clone() };
        select_cost_enumerated(&CostParams::new(c, alpha, lt, [lx, lx, 0]).unwrap(), &table).total()
    };
    for alpha in 2..=5 {
        for lx in 1..=6 {
            for lt in 1..=6 {
                for lq in 4..=6 {
                    let c = cost(alpha, lx, lt, lq);
                    assert!(cost(alpha + 1, lx, lt, lq) >= c);
                    assert!(cost(alpha, lx + 1, lt, lq) >= c);
                    assert!(cost(alpha, lx, lt + 1, lq) >= c);
                    assert!(cost(alpha, lx, lt, lq + 1) >= c);
                }
            }
        }
    }
}

#[test]
fn second_order_has_no_cubic_terms() {
    let (p, table) = params("D1Q3", 2, 1);
    assert!(term_shapes(&p).iter().all(|s| !matches!(s.lambda, lcnu_lbe::Lambda::Nlin { k: 3, .. })));
    assert_exact(&p, &table);
}

#[test]
fn term_count_values() {
    let d1 = LatticeCounts::builtin("D1Q3").unwrap();
    assert_eq!(term_count(&d1, 2), 67);
    assert_eq!(term_count(&d1, 4), 307);
    // alpha = 1 keeps only the linear families and the unit steps
    assert_eq!(term_count(&d1, 1), 2 * (2 * 2 + 4) + 3);
}
