//! Sparse column-by-column simulation of small circuits.

use std::collections::HashMap;

use num_complex::Complex;

use lcnu_core::{Real, SparseComplexMatrix};

use crate::error::{CircuitError, Result};
use crate::gate::{Circuit, Gate, GateKind};

pub const DEFAULT_MAX_QUBITS: u32 = 14;

/// Simulation limit, overridable through `CARLEMAN_LCNU_MAX_QUBITS`.
pub fn max_qubits() -> u32 {
    std::env::var("CARLEMAN_LCNU_MAX_QUBITS").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_QUBITS)
}

type State<T> = HashMap<usize, Complex<T>>;

fn fires<T: Real>(g: &Gate<T>, x: usize) -> bool {
    g.controls.iter().all(|c| ((x >> c.wire) & 1 == 1) != c.open)
}

fn add<T: Real>(s: &mut State<T>, k: usize, v: Complex<T>) {
    let e = s.entry(k).or_insert(Complex::new(T::zero(), T::zero()));
    *e = *e + v;
}

fn apply<T: Real>(g: &Gate<T>, ut: Option<&SparseComplexMatrix<T>>, state: State<T>) -> State<T> {
    let mut out = State::with_capacity(state.len());
    let zero = T::zero();
    for (x, v) in state {
        if !fires(g, x) {
            add(&mut out, x, v);
            continue;
        }
        match &g.kind {
            GateKind::X(w) => add(&mut out, x ^ (1 << w), v),
            GateKind::Y(w) => {
                // Y|0> = i|1>, Y|1> = -i|0>
                let bit = (x >> w) & 1;
                let phase = if bit == 0 { Complex::new(zero, T::one()) } else { Complex::new(zero, -T::one()) };
                add(&mut out, x ^ (1 << w), v * phase);
            }
            GateKind::Z(w) => add(&mut out, x, if (x >> w) & 1 == 1 { -v } else { v }),
            GateKind::H(w) => {
                let s = v * T::FRAC_1_SQRT_2();
                let low = x & !(1 << w);
                add(&mut out, low, s);
                add(&mut out, low | (1 << w), if (x >> w) & 1 == 1 { -s } else { s });
            }
            GateKind::Swap(a, b) => {
                let (ba, bb) = ((x >> a) & 1, (x >> b) & 1);
                let y = if ba != bb { x ^ (1 << a) ^ (1 << b) } else { x };
                add(&mut out, y, v);
            }
            GateKind::Opaque(o) => {
                let mut col = 0usize;
                let mut rest = x;
                for (b, &w) in o.wires.iter().enumerate() {
                    col |= ((x >> w) & 1) << b;
                    rest &= !(1 << w);
                }
                let (rows, vals) = ut.expect("opaque gates carry their transpose").row(col);
                for (&r, &a) in rows.iter().zip(vals) {
                    let mut y = rest;
                    for (b, &w) in o.wires.iter().enumerate() {
                        y |= ((r >> b) & 1) << w;
                    }
                    add(&mut out, y, v * a);
                }
            }
        }
    }
    let tol = T::lit(1e-15);
    out.retain(|_, v| v.norm() > tol);
    out
}

fn transposes<T: Real>(c: &Circuit<T>) -> Vec<Option<SparseComplexMatrix<T>>> {
    c.gates
        .iter()
        .map(|g| match &g.kind {
            GateKind::Opaque(o) => Some(o.unitary.transpose()),
            _ => None,
        })
        .collect()
}

fn run<T: Real>(c: &Circuit<T>, ut: &[Option<SparseComplexMatrix<T>>], x: usize) -> Vec<(usize, Complex<T>)> {
    let mut s = State::new();
    s.insert(x, Complex::new(T::one(), T::zero()));
    for (g, u) in c.gates.iter().zip(ut) {
        s = apply(g, u.as_ref(), s);
    }
    let mut v: Vec<_> = s.into_iter().collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Image of the basis state `|x>` (without the global scale).
pub fn run_basis<T: Real>(c: &Circuit<T>, x: usize) -> Vec<(usize, Complex<T>)> {
    run(c, &transposes(c), x)
}

/// `global_scale` times the product of the gate matrices.
pub fn simulate<T: Real>(c: &Circuit<T>) -> Result<SparseComplexMatrix<T>> {
    let limit = max_qubits();
    if c.n_qubits as u32 > limit {
        return Err(CircuitError::QubitLimit { qubits: c.n_qubits as u32, limit });
    }
    let n = 1usize << c.n_qubits;
    let ut = transposes(c);
    let mut trip = Vec::new();
    for x in 0..n {
        for (r, v) in run(c, &ut, x) {
            trip.push((r, x, v * c.global_scale));
        }
    }
    Ok(SparseComplexMatrix::from_triplets(n, n, trip)?)
}

/// For permutation-only circuits: the image of every basis index.
pub fn permutation_map<T: Real>(c: &Circuit<T>) -> Result<Vec<usize>> {
    if !c.is_permutation() {
        return Err(CircuitError::Invalid("circuit is not a permutation".into()));
    }
    let limit = max_qubits().max(20);
    if c.n_qubits as u32 > limit {
        return Err(CircuitError::QubitLimit { qubits: c.n_qubits as u32, limit });
    }
    Ok((0..1usize << c.n_qubits)
        .map(|x| {
            let mut y = x;
            for g in &c.gates {
                if fires(g, y) {
                    y = match g.kind {
                        GateKind::X(w) => y ^ (1 << w),
                        GateKind::Swap(a, b) if (y >> a) & 1 != (y >> b) & 1 => y ^ (1 << a) ^ (1 << b),
                        _ => y,
                    };
                }
            }
            y
        })
        .collect())
}
