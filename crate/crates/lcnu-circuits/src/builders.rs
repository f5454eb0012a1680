//! Circuits for the structured permutations and index lifts.

use std::sync::Arc;

use lcnu_core::{BasisFactor, Pauli, PermTag, Permutation, Real, UnitaryKind};

use crate::error::{CircuitError, Result};
use crate::gate::{BlockKind, Circuit, Control, Gate, GateKind, OpaqueGate};

fn log2_exact(v: u128, what: &str) -> Result<u32> {
    if v == 0 || !v.is_power_of_two() {
        return Err(CircuitError::Invalid(format!("{what} = {v} is not a power of two")));
    }
    Ok(v.trailing_zeros())
}

/// X gates on the set bits of `mask`.
pub fn circuit_xstring<T: Real>(qubits: u32, mask: u128) -> Result<Circuit<T>> {
    if qubits < 128 && mask >> qubits != 0 {
        return Err(CircuitError::Invalid(format!("mask {mask:#x} wider than {qubits} wires")));
    }
    let mut c = Circuit::new(qubits as usize);
    for w in 0..qubits as usize {
        if (mask >> w) & 1 == 1 {
            c.push(Gate::x(w))?;
        }
    }
    Ok(c)
}

/// `P_k` on `(k-1) log N` wires: prepares `|b>` from `|0>`.
pub fn circuit_pk<T: Real>(k: u32, n: u128) -> Result<Circuit<T>> {
    if k < 2 {
        return Err(CircuitError::Invalid(format!("P_k needs k >= 2, got {k}")));
    }
    let qn = log2_exact(n, "N")?;
    let b = n.pow(k - 1) - (0..k - 1).map(|l| n.pow(l)).sum::<u128>();
    circuit_xstring((k - 1) * qn, b)
}

/// `prod_{i < qr} CX(i, i + qm)` on `qubits` wires.
pub fn circuit_ladder<T: Real>(qubits: u32, qm: u32, qr: u32) -> Result<Circuit<T>> {
    if qr > qm || qm + qr > qubits {
        return Err(CircuitError::Invalid(format!("ladder ({qm}, {qr}) on {qubits} wires")));
    }
    let mut c = Circuit::new(qubits as usize);
    for i in 0..qr as usize {
        c.push(Gate::cx(i, i + qm as usize))?;
    }
    Ok(c)
}

/// `M^r_{m+1}`: maps `|i (m + 1)> -> |i>` for `i < r` with `log r` CNOTs.
pub fn circuit_m<T: Real>(m: u128, r: u128) -> Result<Circuit<T>> {
    if r > m {
        return Err(CircuitError::Invalid(format!("r = {r} exceeds m = {m}")));
    }
    let (qm, qr) = (log2_exact(m, "m")?, log2_exact(r, "r")?);
    circuit_ladder(qm + qr, qm, qr)
}

fn check_q(q: u32, big_q: u128) -> Result<()> {
    if q == 0 || q as u128 > big_q {
        return Err(CircuitError::Invalid(format!("q = {q} outside 1..={big_q}")));
    }
    Ok(())
}

fn b2_local<T: Real>(qq: u32, qn: u32, q: u32) -> Result<Circuit<T>> {
    let mut c = circuit_ladder(2 * qn + qq, qn + qq, qn)?;
    let x = circuit_xstring::<T>(2 * qn + qq, ((q as u128) - 1) << qn)?;
    for g in x.gates {
        c.push(g)?;
    }
    Ok(c)
}

/// Unitary lift of `B_{2,q}`: ladder, then `X_{log Q}(q - 1)` on the velocity wires.
pub fn circuit_b2q<T: Real>(q: u32, big_q: u128, n: u128) -> Result<Circuit<T>> {
    check_q(q, big_q)?;
    b2_local(log2_exact(big_q, "Q")?, log2_exact(n, "n")?, q)
}

fn b3_local<T: Real>(qq: u32, qn: u32, q: u32) -> Result<Circuit<T>> {
    let total = 3 * qn + 2 * qq;
    let mut c = Circuit::new(total as usize);
    for w in 2 * qn + qq..2 * qn + 2 * qq {
        c.push(Gate::h(w as usize))?;
    }
    for g in circuit_ladder::<T>(total, 2 * (qn + qq), qn)?.gates {
        c.push(g)?;
    }
    for g in b2_local::<T>(qq, qn, q)?.gates {
        c.push(g)?;
    }
    Ok(c)
}

/// Lift of `B_{3,q}`; the circuit scale `2^{-log Q / 2}` undoes the Hadamard normalization.
pub fn circuit_b3q<T: Real>(q: u32, big_q: u128, n: u128) -> Result<Circuit<T>> {
    check_q(q, big_q)?;
    let qq = log2_exact(big_q, "Q")?;
    let mut c = b3_local(qq, log2_exact(n, "n")?, q)?;
    c.global_scale = T::lit(2f64.powf(-(qq as f64) / 2.0));
    Ok(c)
}

fn commutation_local<T: Real>(qa: u32, qb: u32) -> Result<Circuit<T>> {
    // wire w < qa moves to w + qb: bubble each low wire through the high block
    let mut c = Circuit::new((qa + qb) as usize);
    for t in (0..qa as usize).rev() {
        for s in 0..qb as usize {
            c.push(Gate::swap(t + s, t + s + 1))?;
        }
    }
    Ok(c)
}

/// `K^{(a,b)}` with `log a log b` SWAPs.
pub fn circuit_commutation<T: Real>(a: u128, b: u128) -> Result<Circuit<T>> {
    commutation_local(log2_exact(a, "a")?, log2_exact(b, "b")?)
}

/// `|x> -> |x + shift mod 2^qubits>` from MCX ripples, one per set bit of `|shift|`.
pub fn incrementer_qubits<T: Real>(qubits: u32, shift: i64) -> Result<Circuit<T>> {
    let mut c = Circuit::new(qubits as usize);
    let q = qubits as usize;
    let mag = shift.unsigned_abs() as u128;
    let open = shift < 0;
    for k in 0..q.min(64) {
        if (mag >> k) & 1 == 0 {
            continue;
        }
        for i in (k..q).rev() {
            let controls = (k..i).map(|w| Control { wire: w, open }).collect();
            c.push(Gate::mcx(controls, i))?;
        }
    }
    Ok(c)
}

/// `S_{+1}` on `r` states; `controlled` adds a closed control on wire `log r`.
pub fn circuit_incrementer<T: Real>(r: u128, controlled: bool) -> Result<Circuit<T>> {
    let c = incrementer_qubits(log2_exact(r, "r")?, 1)?;
    Ok(if controlled { c.controlled() } else { c })
}

/// Gate-level lowering of one basis factor on its own wires.
pub fn lower_factor<T: Real>(f: &BasisFactor<T>) -> Result<(Circuit<T>, BlockKind)> {
    let q = f.qubits();
    Ok(match f {
        BasisFactor::Identity(_) => (Circuit::new(q as usize), BlockKind::Pauli),
        BasisFactor::Pauli(p) => {
            let mut c = Circuit::new(1);
            c.push(Gate::new(match p {
                Pauli::X => GateKind::X(0),
                Pauli::Y => GateKind::Y(0),
                Pauli::Z => GateKind::Z(0),
            }))?;
            (c, BlockKind::Pauli)
        }
        BasisFactor::Rho(_) => return Err(CircuitError::NoLowering(f.label())),
        BasisFactor::Permutation(p) => lower_permutation(p)?,
        BasisFactor::Unitary(u) => match &u.kind {
            UnitaryKind::BBar3 { qq, qn, q: idx } => (b3_local(*qq, *qn, *idx)?, BlockKind::BBar3),
            UnitaryKind::Dense(_) => {
                let mut c = Circuit::new(q as usize);
                c.push(Gate::new(GateKind::Opaque(OpaqueGate {
                    name: u.name.clone(),
                    wires: (0..q as usize).collect(),
                    unitary: Arc::new(u.materialize()?),
                    role: u.role,
                    t_cost: None,
                })))?;
                (c, BlockKind::Opaque(u.role))
            }
        },
    })
}

fn lower_permutation<T: Real>(p: &Permutation) -> Result<(Circuit<T>, BlockKind)> {
    let q = p.qubits;
    Ok(match &p.tag {
        PermTag::Incrementer { shift } => (incrementer_qubits(q, *shift)?, BlockKind::Incrementer),
        PermTag::Commutation { qa, qb } => (commutation_local(*qa, *qb)?, BlockKind::Commutation),
        PermTag::XString { mask } => (circuit_xstring(q, *mask)?, BlockKind::XLayer),
        PermTag::MLadder { qm, qr } => (circuit_ladder(q, *qm, *qr)?, BlockKind::Ladder),
        PermTag::BBar2 { qq, qn, q: idx } => (b2_local(*qq, *qn, *idx)?, BlockKind::BBar2),
        PermTag::Swap => {
            let mut c = Circuit::new(2);
            c.push(Gate::swap(0, 1))?;
            (c, BlockKind::Commutation)
        }
        PermTag::Explicit(_) => return Err(CircuitError::NoLowering(p.name.clone())),
    })
}
