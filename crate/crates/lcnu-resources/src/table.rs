//! Controlled-gate T counts.

use serde::{Deserialize, Serialize};

use lcnu_core::{BasisFactor, PermTag, SvdGroup, UnitaryKind, UnitaryRole};

use crate::error::{ResourceError, Result};

/// T cost of the controlled SVD unitary pairs `C W + C V`. These come from
/// gate synthesis outside this crate and are plain inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvdConstants {
    /// `G[C W_R] + G[C V_R]`.
    pub collision: u64,
    /// `G[C W_Gamma] + G[C V_Gamma]`, shared by every slice `q`.
    pub tensor: u64,
}

impl SvdConstants {
    /// Published synthesis results for the three padded built-in lattices.
    pub fn for_lattice(name: &str) -> Option<Self> {
        let (collision, tensor) = match name.trim_end_matches('*').to_ascii_uppercase().as_str() {
            "D1Q3" => (27, 20),
            "D2Q9" => (272, 255),
            "D3Q15" => (273, 265),
            _ => return None,
        };
        Some(Self { collision, tensor })
    }
}

/// Integer T-count rules for controlled gates. All sizes are in qubits
/// (`log` of the register dimension).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCostTable {
    pub svd: SvdConstants,
}

impl GateCostTable {
    pub fn new(svd: SvdConstants) -> Self {
        Self { svd }
    }

    pub fn for_lattice(name: &str) -> Result<Self> {
        SvdConstants::for_lattice(name)
            .map(Self::new)
            .ok_or_else(|| ResourceError::Params(format!("no default SVD constants for lattice `{name}`")))
    }

    pub fn cnot(&self) -> u64 {
        0
    }

    pub fn toffoli(&self) -> u64 {
        7
    }

    /// `C^k X`: free for `k <= 1`, a Toffoli for `k = 2`, `8k - 12` above.
    pub fn mcx(&self, k: u64) -> u64 {
        match k {
            0 | 1 => self.cnot(),
            2 => self.toffoli(),
            _ => 8 * k - 12,
        }
    }

    /// Uncontrolled cyclic incrementer on `2^log_r` states.
    pub fn incrementer(&self, log_r: u64) -> u64 {
        12 * log_r
    }

    pub fn controlled_incrementer(&self, log_r: u64) -> u64 {
        12 * (log_r + 1)
    }

    pub fn cswap(&self) -> u64 {
        7
    }

    /// `C^k U` from `C U` with `k - 1` clean ancillas.
    pub fn multi_controlled(&self, k: u64, controlled_u: u64) -> u64 {
        14 * k.saturating_sub(1) + controlled_u
    }

    pub fn controlled_hadamard(&self) -> u64 {
        2
    }

    pub fn controlled_pk(&self) -> u64 {
        0
    }

    /// `C K^(2^a, 2^b)`.
    pub fn controlled_commutation(&self, a: u64, b: u64) -> u64 {
        7 * a * b
    }

    pub fn controlled_bbar2(&self, log_n: u64) -> u64 {
        7 * log_n
    }

    pub fn controlled_bbar3(&self, log_n: u64, log_q: u64) -> u64 {
        21 * log_n + 2 * log_q
    }

    pub fn svd_pair(&self, group: SvdGroup) -> u64 {
        match group {
            SvdGroup::Collision => self.svd.collision,
            SvdGroup::Tensor(_) => self.svd.tensor,
        }
    }

    pub fn item_cost(&self, item: CostItem) -> u64 {
        match item {
            CostItem::Mcx { controls } => self.mcx(controls),
            CostItem::ControlledIncrementer { log_r } => self.controlled_incrementer(log_r),
            CostItem::Commutation { a, b } => self.controlled_commutation(a, b),
            CostItem::Ladder { rungs } => rungs * self.toffoli(),
            CostItem::BBar2 { log_n } => self.controlled_bbar2(log_n),
            CostItem::BBar3 { log_n, log_q } => self.controlled_bbar3(log_n, log_q),
            CostItem::SvdPair { group } => self.svd_pair(group),
            CostItem::Swap => self.cswap(),
        }
    }

    /// T cost of one completion factor under a single extra control.
    pub fn controlled_factor(&self, f: &BasisFactor<f64>) -> Result<u64> {
        Ok(factor_item(f)?.map_or(0, |i| self.item_cost(i)))
    }
}

/// A costed gate of a controlled term circuit. Free gates (controlled
/// Paulis, X strings, right SVD factors) have no item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum CostItem {
    Mcx { controls: u64 },
    ControlledIncrementer { log_r: u64 },
    Commutation { a: u64, b: u64 },
    Ladder { rungs: u64 },
    BBar2 { log_n: u64 },
    BBar3 { log_n: u64, log_q: u64 },
    SvdPair { group: SvdGroup },
    Swap,
}

/// Cost item of a completion factor under one control.
pub fn factor_item(f: &BasisFactor<f64>) -> Result<Option<CostItem>> {
    let no_rule = || ResourceError::NoCostRule(f.label());
    Ok(match f {
        BasisFactor::Identity(_) | BasisFactor::Pauli(_) => None,
        BasisFactor::Rho(_) => return Err(no_rule()),
        BasisFactor::Permutation(p) => match &p.tag {
            PermTag::XString { .. } => None,
            PermTag::Incrementer { shift } if shift.unsigned_abs() == 1 => {
                Some(CostItem::ControlledIncrementer { log_r: p.qubits as u64 })
            }
            PermTag::Incrementer { .. } | PermTag::Explicit(_) => return Err(no_rule()),
            PermTag::Commutation { qa, qb } => Some(CostItem::Commutation { a: *qa as u64, b: *qb as u64 }),
            PermTag::MLadder { qr, .. } => Some(CostItem::Ladder { rungs: *qr as u64 }),
            PermTag::BBar2 { qn, .. } => Some(CostItem::BBar2 { log_n: *qn as u64 }),
            PermTag::Swap => Some(CostItem::Swap),
        },
        BasisFactor::Unitary(u) => match (&u.kind, u.role) {
            (UnitaryKind::BBar3 { qq, qn, .. }, _) => Some(CostItem::BBar3 { log_n: *qn as u64, log_q: *qq as u64 }),
            (_, UnitaryRole::SvdLeft(group)) => Some(CostItem::SvdPair { group }),
            (_, UnitaryRole::SvdRight(_)) => None,
            (_, UnitaryRole::Generic) => return Err(no_rule()),
        },
    })
}
