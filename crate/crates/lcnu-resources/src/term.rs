//! Per-term T cost of a singly controlled embedded term.

use serde::Serialize;

use lcnu_core::{complete_term, gram_signature, GramSignature, Term};
use lcnu_lbe::CatalogEntry;

use crate::error::Result;
use crate::table::{factor_item, CostItem, GateCostTable};

/// `G[C U_l] = G[C^{T+1} X] + G[C Lbar]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermCost {
    /// Controls of the Gram MCX, including the selection control.
    pub controls: u64,
    pub u1: u64,
    pub u2: u64,
    /// Costed completion gates (zero-cost items dropped).
    pub items: Vec<CostItem>,
}

impl TermCost {
    pub fn total(&self) -> u64 {
        self.u1 + self.u2
    }

    pub fn from_items(t_count: u64, items: Vec<CostItem>, table: &GateCostTable) -> Self {
        let items: Vec<CostItem> = items.into_iter().filter(|&i| table.item_cost(i) > 0).collect();
        Self {
            controls: t_count + 1,
            u1: table.mcx(t_count + 1),
            u2: items.iter().map(|&i| table.item_cost(i)).sum(),
            items,
        }
    }
}

fn cost_of(gram: &GramSignature<f64>, completion: &Term, table: &GateCostTable) -> Result<TermCost> {
    let mut items = Vec::new();
    for layer in &completion.layers {
        for f in layer {
            items.extend(factor_item(f)?);
        }
    }
    Ok(TermCost::from_items(gram.t_count() as u64, items, table))
}

/// Cost of a raw term; computes its Gram signature and completion.
pub fn t_cost_term(term: &Term, table: &GateCostTable) -> Result<TermCost> {
    let gram = gram_signature(term)?.into_signature()?;
    cost_of(&gram, &complete_term(term)?, table)
}

/// Cost of a catalog entry from its stored signature and completion.
pub fn t_cost_entry(entry: &CatalogEntry, table: &GateCostTable) -> Result<TermCost> {
    cost_of(&entry.gram, &entry.completion, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcnu_core::{BasisFactor, Permutation, Rho, C64};

    fn table() -> GateCostTable {
        GateCostTable::for_lattice("D1Q3").unwrap()
    }

    #[test]
    fn identity_term_is_free() {
        let t = Term::kron(C64::new(1.0, 0.0), vec![BasisFactor::Identity(3)]);
        let c = t_cost_term(&t, &table()).unwrap();
        assert_eq!((c.controls, c.total()), (1, 0));
        assert!(c.items.is_empty());
    }

    #[test]
    fn rho_string_needs_an_mcx() {
        let mut f: Vec<_> = (0..3).map(|_| BasisFactor::Rho(Rho::R1)).collect();
        f.push(BasisFactor::Identity(2));
        let c = t_cost_term(&Term::kron(C64::new(1.0, 0.0), f), &table()).unwrap();
        assert_eq!((c.controls, c.u1, c.u2), (4, 20, 0));
    }

    #[test]
    fn unsupported_shift_has_no_rule() {
        let t = Term::kron(C64::new(1.0, 0.0), vec![BasisFactor::Permutation(Permutation::incrementer(3, 3))]);
        assert!(t_cost_term(&t, &table()).is_err());
    }
}
