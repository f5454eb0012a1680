//! SELECT-oracle costs summed term by term.

use serde::Serialize;

use lcnu_core::{SvdGroup, TermLabel};
use lcnu_lbe::{Axis, Lambda, TermCatalog};

use crate::error::Result;
use crate::params::CostParams;
use crate::table::{CostItem, GateCostTable};
use crate::term::{t_cost_entry, TermCost};

/// Gram weight and costed completion gates of one term, derived from its
/// index tuple alone. Lets the sums run at sizes where the terms themselves
/// could never be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermShape {
    pub lambda: Lambda,
    pub t_count: u64,
    pub items: Vec<CostItem>,
}

impl TermShape {
    pub fn cost(&self, table: &GateCostTable) -> TermCost {
        TermCost::from_items(self.t_count, self.items.clone(), table)
    }
}

/// Every term of the catalog for `p`, in tuple order.
pub fn term_shapes(p: &CostParams) -> Vec<TermShape> {
    let a = p.alpha;
    let t = p.log_nt as u64;
    let lq = p.log_qn() as u64;
    let ln = p.log_n() as u64;
    let mut out = vec![
        TermShape { lambda: Lambda::L1 { index: 1 }, t_count: 0, items: vec![] },
        TermShape { lambda: Lambda::L1 { index: 2 }, t_count: t, items: vec![] },
        TermShape {
            lambda: Lambda::L1 { index: 3 },
            t_count: 0,
            items: vec![CostItem::ControlledIncrementer { log_r: t }],
        },
    ];
    // time projector, a register prefix and the rho3 / rho1 selector
    let weight = |i: usize, j: usize| (i as u64 - 1) * t + (a - j) as u64 * lq + 1;
    for i in 1..=2 {
        for j in 1..=a {
            for l in 0..j {
                for axis in Axis::ALL {
                    for pm in [1i8, -1] {
                        for m in 1..=p.counts.n_e[axis.index()] {
                            out.push(TermShape {
                                lambda: Lambda::Lin1 { i, j, l, axis, p: pm, m },
                                t_count: weight(i, j),
                                items: vec![CostItem::ControlledIncrementer {
                                    log_r: p.log_axes[axis.index()] as u64,
                                }],
                            });
                        }
                    }
                }
                for m in 1..=p.counts.n_r {
                    out.push(TermShape {
                        lambda: Lambda::Lin2 { i, j, l, m },
                        t_count: weight(i, j),
                        items: vec![CostItem::SvdPair { group: SvdGroup::Collision }],
                    });
                }
            }
        }
        for k in 2..=3usize {
            for j in 1..(a + 2).saturating_sub(k) {
                for l in 0..j {
                    let (ku, lu) = (k as u64, l as u64);
                    let bbar = if k == 2 {
                        CostItem::BBar2 { log_n: ln }
                    } else {
                        CostItem::BBar3 { log_n: ln, log_q: p.counts.log_q as u64 }
                    };
                    for (qi, &count) in p.counts.n_gamma_q.iter().enumerate() {
                        for m in 1..=count {
                            out.push(TermShape {
                                lambda: Lambda::Nlin { k, i, j, l, q: qi + 1, m },
                                t_count: weight(i, j),
                                items: vec![
                                    CostItem::Commutation { a: lu * lq, b: lq },
                                    bbar,
                                    CostItem::SvdPair { group: SvdGroup::Tensor(qi as u32 + 1) },
                                    CostItem::Commutation { a: ku * lq, b: lu * lq },
                                ],
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.lambda.cmp(&y.lambda));
    out
}

/// Costs of one term group, split into the Gram MCX part and the completion part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupCost {
    pub terms: u64,
    pub u1: u64,
    pub u2: u64,
}

impl GroupCost {
    pub fn total(&self) -> u64 {
        self.u1 + self.u2
    }

    fn add(&mut self, c: &TermCost) {
        self.terms += 1;
        self.u1 += c.u1;
        self.u2 += c.u2;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelectCost {
    pub l1: GroupCost,
    pub lin1: GroupCost,
    pub lin2: GroupCost,
    pub nlin: GroupCost,
    pub n_s: u64,
    /// `14 N_s (ceil(log N_s) - 1)` for lifting the single control to `log N_s` controls.
    pub overhead: u64,
}

impl SelectCost {
    pub fn groups_total(&self) -> u64 {
        self.l1.total() + self.lin1.total() + self.lin2.total() + self.nlin.total()
    }

    pub fn total(&self) -> u64 {
        self.groups_total() + self.overhead
    }

    fn add(&mut self, label: TermLabel, c: &TermCost) {
        match label {
            TermLabel::L1 => self.l1.add(c),
            TermLabel::Lin1 => self.lin1.add(c),
            TermLabel::Lin2 => self.lin2.add(c),
            _ => self.nlin.add(c),
        }
        self.n_s += 1;
    }

    fn finish(mut self, table: &GateCostTable) -> Self {
        self.overhead = select_overhead(self.n_s, table);
        self
    }
}

pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Row-7 lifting of every term from one control to the `ceil(log N_s)` index register.
pub fn select_overhead(n_s: u64, table: &GateCostTable) -> u64 {
    n_s * table.multi_controlled(ceil_log2(n_s), 0)
}

/// Sum over the index tuples of `p`.
pub fn select_cost_enumerated(p: &CostParams, table: &GateCostTable) -> SelectCost {
    let mut s = SelectCost::default();
    for shape in term_shapes(p) {
        s.add(shape.lambda.label(), &shape.cost(table));
    }
    s.finish(table)
}

/// Sum over the terms of a built catalog.
pub fn select_cost_catalog(catalog: &TermCatalog, table: &GateCostTable) -> Result<SelectCost> {
    let mut s = SelectCost::default();
    for e in &catalog.entries {
        s.add(e.lambda.label(), &t_cost_entry(e, table)?);
    }
    Ok(s.finish(table))
}
