#![allow(dead_code)]

use lcnu_core::C64;
use lcnu_lbe::{padded_builtin, LbeConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn cfg(name: &str) -> LbeConfig {
    LbeConfig::minimal(padded_builtin(name).unwrap(), 0.8).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random real state with the padding velocities left at zero.
pub fn random_state(cfg: &LbeConfig, rng: &mut impl Rng) -> Vec<C64> {
    let q = cfg.lattice.q();
    let qp = cfg.lattice.physical_q();
    (0..cfg.state_dim())
        .map(|i| if i % q < qp { C64::new(rng.gen_range(0.0..0.3), 0.0) } else { C64::new(0.0, 0.0) })
        .collect()
}

pub fn kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
