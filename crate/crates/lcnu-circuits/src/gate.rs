//! Gate-level IR. Wires are little-endian: wire 0 is the least significant bit.

use std::sync::Arc;

use lcnu_core::{Real, SparseComplexMatrix, UnitaryRole};

use crate::error::{CircuitError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub wire: usize,
    /// Open controls fire on `|0>`.
    pub open: bool,
}

impl Control {
    pub fn closed(wire: usize) -> Self {
        Self { wire, open: false }
    }

    pub fn open(wire: usize) -> Self {
        Self { wire, open: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OpaqueGate<T> {
    pub name: String,
    /// `wires[b]` carries bit `b` of the local basis index.
    pub wires: Vec<usize>,
    pub unitary: Arc<SparseComplexMatrix<T>>,
    pub role: UnitaryRole,
    /// Controlled T cost, if known.
    pub t_cost: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind<T> {
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    Swap(usize, usize),
    Opaque(OpaqueGate<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate<T> {
    pub kind: GateKind<T>,
    pub controls: Vec<Control>,
}

impl<T: Real> Gate<T> {
    pub fn new(kind: GateKind<T>) -> Self {
        Self { kind, controls: Vec::new() }
    }

    pub fn x(w: usize) -> Self {
        Self::new(GateKind::X(w))
    }

    pub fn h(w: usize) -> Self {
        Self::new(GateKind::H(w))
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap(a, b))
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::mcx(vec![Control::closed(control)], target)
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Self { kind: GateKind::X(target), controls }
    }

    pub fn targets(&self) -> Vec<usize> {
        match &self.kind {
            GateKind::X(w) | GateKind::Y(w) | GateKind::Z(w) | GateKind::H(w) => vec![*w],
            GateKind::Swap(a, b) => vec![*a, *b],
            GateKind::Opaque(o) => o.wires.clone(),
        }
    }

    pub fn wires(&self) -> Vec<usize> {
        let mut w = self.targets();
        w.extend(self.controls.iter().map(|c| c.wire));
        w
    }

    /// `X` with at least one control.
    pub fn is_mcx(&self) -> bool {
        matches!(self.kind, GateKind::X(_)) && !self.controls.is_empty()
    }

    /// Gate permutes basis states up to phase.
    pub fn is_permutation(&self) -> bool {
        matches!(self.kind, GateKind::X(_) | GateKind::Swap(..))
    }

    pub fn name(&self) -> String {
        let base = match &self.kind {
            GateKind::X(_) => "x".to_string(),
            GateKind::Y(_) => "y".to_string(),
            GateKind::Z(_) => "z".to_string(),
            GateKind::H(_) => "h".to_string(),
            GateKind::Swap(..) => "swap".to_string(),
            GateKind::Opaque(o) => o.name.clone(),
        };
        if self.controls.is_empty() {
            base
        } else {
            format!("c{}{}", self.controls.len(), base)
        }
    }

    pub fn check(&self, n_qubits: usize) -> Result<()> {
        let w = self.wires();
        if let Some(bad) = w.iter().find(|&&x| x >= n_qubits) {
            return Err(CircuitError::InvalidGate(format!("{} touches wire {bad} of {n_qubits}", self.name())));
        }
        let mut sorted = w.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != w.len() {
            return Err(CircuitError::InvalidGate(format!("{} repeats a wire", self.name())));
        }
        if let GateKind::Opaque(o) = &self.kind {
            let d = 1usize << o.wires.len();
            if o.unitary.shape() != (d, d) {
                return Err(CircuitError::InvalidGate(format!("{} has a {:?} matrix on {} wires", o.name, o.unitary.shape(), o.wires.len())));
            }
        }
        Ok(())
    }

    /// The gate moved to other wires via `f`.
    pub fn remapped(&self, f: impl Fn(usize) -> usize) -> Self {
        let kind = match &self.kind {
            GateKind::X(w) => GateKind::X(f(*w)),
            GateKind::Y(w) => GateKind::Y(f(*w)),
            GateKind::Z(w) => GateKind::Z(f(*w)),
            GateKind::H(w) => GateKind::H(f(*w)),
            GateKind::Swap(a, b) => GateKind::Swap(f(*a), f(*b)),
            GateKind::Opaque(o) => GateKind::Opaque(OpaqueGate { wires: o.wires.iter().map(|&w| f(w)).collect(), ..o.clone() }),
        };
        Gate { kind, controls: self.controls.iter().map(|c| Control { wire: f(c.wire), ..*c }).collect() }
    }
}

/// What a contiguous run of gates implements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Pauli,
    XLayer,
    Incrementer,
    Commutation,
    Ladder,
    BBar2,
    BBar3,
    Opaque(UnitaryRole),
    AncillaFlip,
    GramControl,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub kind: BlockKind,
    pub name: String,
    /// Gate range `start..end`.
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<T> {
    pub n_qubits: usize,
    pub ancilla: Option<usize>,
    pub gates: Vec<Gate<T>>,
    /// Multiplies the unitary of the gate sequence.
    pub global_scale: T,
    pub blocks: Vec<Block>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, ancilla: None, gates: Vec::new(), global_scale: T::one(), blocks: Vec::new() }
    }

    pub fn push(&mut self, g: Gate<T>) -> Result<()> {
        g.check(self.n_qubits)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends `other` with its wire `w` placed on `offset + w`, recording it as one block.
    pub fn append_block(&mut self, other: &Circuit<T>, offset: usize, kind: BlockKind, name: impl Into<String>) -> Result<()> {
        let start = self.gates.len();
        for g in &other.gates {
            self.push(g.remapped(|w| w + offset))?;
        }
        self.global_scale = self.global_scale * other.global_scale;
        self.blocks.push(Block { kind, name: name.into(), start, end: self.gates.len() });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, pred: impl Fn(&Gate<T>) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn count_blocks(&self, kind: &BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == *kind).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.gates.iter().all(Gate::is_permutation)
    }

    /// Same circuit on one more wire (`n_qubits`), which controls every gate.
    pub fn controlled(&self) -> Circuit<T> {
        let c = Control::closed(self.n_qubits);
        let gates = self
            .gates
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.controls.push(c);
                g
            })
            .collect();
        Circuit { n_qubits: self.n_qubits + 1, gates, ..self.clone() }
    }
}

/// Adds one closed control on a new top wire to every gate.
pub fn add_control<T: Real>(c: &Circuit<T>) -> Circuit<T> {
    c.controlled()
}
