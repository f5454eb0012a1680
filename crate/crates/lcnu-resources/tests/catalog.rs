//! Term-by-term costs from built catalogs against the tuple-derived shapes.

use std::collections::HashMap;

use lcnu_lbe::{compute_subdecompositions, enumerate_terms, padded_builtin, LbeConfig, TermCatalog};
use lcnu_resources::*;

fn build(name: &str, grid: [usize; 3], alpha: usize, n_t: usize) -> (TermCatalog, CostParams) {
    let cfg = LbeConfig::new(padded_builtin(name).unwrap(), grid[0], grid[1], grid[2], 0.8).unwrap();
    let sub = compute_subdecompositions(&cfg).unwrap();
    let cat = enumerate_terms(&cfg, &sub, alpha, n_t, 0.01).unwrap();
    let counts = LatticeCounts::from_subdecompositions(&cfg, &sub);
    let log = |n: usize| n.trailing_zeros();
    let mut axes = [0; 3];
    for a in 0..counts.dims {
        axes[a] = log(grid[a]);
    }
    (cat, CostParams::new(counts, alpha, log(n_t), axes).unwrap())
}

fn check(name: &str, grid: [usize; 3], alpha: usize, n_t: usize) {
    let (cat, p) = build(name, grid, alpha, n_t);
    let table = GateCostTable::for_lattice(name).unwrap();
    let shapes: HashMap<_, _> = term_shapes(&p).into_iter().map(|s| (s.lambda, s)).collect();
    assert_eq!(shapes.len(), cat.len(), "{name} alpha={alpha}");
    for e in &cat.entries {
        let built = t_cost_entry(e, &table).unwrap();
        let shape = &shapes[&e.lambda];
        assert_eq!(e.gram.t_count() as u64, shape.t_count, "{:?}", e.lambda);
        let mut a = built.items.clone();
        let mut b = shape.cost(&table).items;
        let key = |i: &CostItem| format!("{i:?}");
        a.sort_by_key(key);
        b.sort_by_key(key);
        assert_eq!(a, b, "{:?}", e.lambda);
        let c = shape.cost(&table);
        assert_eq!((built.controls, built.u1, built.u2), (c.controls, c.u1, c.u2));
    }
    assert_eq!(select_cost_catalog(&cat, &table).unwrap(), select_cost_enumerated(&p, &table));
    assert_eq!(cat.len() as u64, term_count(&p.counts, alpha));
}

#[test]
fn d1q3_catalogs_match_shapes() {
    for alpha in 2..=4 {
        check("D1Q3", [2, 1, 1], alpha, 2);
    }
    check("D1Q3", [4, 1, 1], 2, 4);
    check("D1Q3", [8, 1, 1], 2, 8);
}

#[test]
fn d2q9_and_d3q15_catalogs_match_shapes() {
    check("D2Q9", [2, 2, 1], 2, 2);
    check("D2Q9", [4, 2, 1], 2, 4);
    check("D3Q15", [2, 2, 2], 2, 2);
}

#[test]
fn raw_term_and_stored_completion_agree() {
    let (cat, _) = build("D1Q3", [2, 1, 1], 3, 2);
    let table = GateCostTable::for_lattice("D1Q3").unwrap();
    for e in &cat.entries {
        assert_eq!(t_cost_term(&e.term, &table).unwrap(), t_cost_entry(e, &table).unwrap());
    }
}

#[test]
fn unit_step_group_matches_hand_count() {
    // log n_t = 2: 12 (2 + 1) for the incrementer, 8 * 3 - 12 for the MCX
    let (cat, _) = build("D1Q3", [2, 1, 1], 2, 4);
    let table = GateCostTable::for_lattice("D1Q3").unwrap();
    let s = select_cost_catalog(&cat, &table).unwrap();
    assert_eq!(s.l1.total(), 20 * 2 + 8);
    assert_eq!(s.n_s, 67);
}
