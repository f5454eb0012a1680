//! Closed-form SELECT costs.
//!
//! Two sets of formulas live here. The `exact` ones are derived from the
//! same cost rules as the term-by-term sums and agree with them to the unit.
//! The `published` ones are the previously published expressions; they
//! assume every MCX has more than two controls, price the cubic and
//! quadratic index maps differently from the gate table, and carry a few
//! arithmetic slips, so they are reported for comparison only.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::params::{term_count, CostParams};
use crate::select::select_overhead;
use crate::table::GateCostTable;

pub type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn frac(a: i128, b: i128) -> Q {
    Q::new(a, b)
}

/// Integer value of an exact rational, if it is one.
pub fn as_integer(x: Q) -> Option<i128> {
    x.is_integer().then(|| x.to_integer())
}

pub fn to_f64(x: Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

struct Sym {
    a: i128,
    t: i128,
    lq: i128,
    ln: i128,
    lqq: i128,
    ne: i128,
    nex: i128,
    nr: i128,
    ng: i128,
    gr: i128,
    gg: i128,
}

impl Sym {
    fn new(p: &CostParams, table: &GateCostTable) -> Self {
        let c = &p.counts;
        Self {
            a: p.alpha as i128,
            t: p.log_nt as i128,
            lq: p.log_qn() as i128,
            ln: p.log_n() as i128,
            lqq: c.log_q as i128,
            ne: c.n_e_total() as i128,
            nex: c.n_e[0] as i128,
            nr: c.n_r as i128,
            ng: c.n_gamma() as i128,
            gr: table.svd.collision as i128,
            gg: table.svd.tensor as i128,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactForms {
    pub l1: i128,
    pub lin1_u1: i128,
    pub lin1_u2: i128,
    pub lin2_u1: i128,
    pub lin2_u2: i128,
    pub nlin_u1: i128,
    pub nlin_u2: i128,
    pub overhead: i128,
}

impl ExactForms {
    pub fn lin1(&self) -> i128 {
        self.lin1_u1 + self.lin1_u2
    }

    pub fn lin2(&self) -> i128 {
        self.lin2_u1 + self.lin2_u2
    }

    pub fn nlin(&self) -> i128 {
        self.nlin_u1 + self.nlin_u2
    }

    pub fn total(&self) -> i128 {
        self.l1 + self.lin1() + self.lin2() + self.nlin() + self.overhead
    }
}

fn int(x: Q, what: &str) -> i128 {
    as_integer(x).unwrap_or_else(|| panic!("{what} closed form is not an integer: {x}"))
}

/// Closed forms that match the enumerated sums exactly.
pub fn exact_forms(p: &CostParams, table: &GateCostTable) -> ExactForms {
    let s = Sym::new(p, table);
    let (a, t, lq) = (s.a, s.t, s.lq);
    let a1 = a - 1;
    let aa = a * (a + 1);
    // 20 log n_t + 8, plus 3 when the wrap-around MCX is a Toffoli
    let l1 = 20 * t + 8 + if t == 1 { 3 } else { 0 };
    // one Toffoli (7 instead of 8k - 12 = 4) per term with i = 1, j = alpha
    let lin1_u1 = q(aa * s.ne) * (q(8 * (t + 1)) + frac(16, 3) * q(a1 * lq)) + q(6 * a * s.ne);
    let axis_sum: i128 = (0..3).map(|x| p.counts.n_e[x] as i128 * (p.log_axes[x] as i128 + 1)).sum();
    let lin1_u2 = 24 * aa * axis_sum;
    let lin2_u1 = q(s.nr) * (q(aa) * (q(4 * (t + 1)) + frac(8, 3) * q(a1 * lq)) + q(3 * a));
    let lin2_u2 = s.nr * aa * s.gr;
    let nlin_u1 = frac(16, 3) * q(s.ng * a1 * (a * a + a - 3) * lq) + q(8 * (t + 1) * s.ng * a1 * a1);
    let nlin_u2 = frac(7, 3) * q(s.ng * a1 * (a - 2) * (7 * a - 12) * lq * lq)
        + q(s.ng * a1 * (7 * a * s.ln + (a - 2) * (21 * s.ln + 2 * s.lqq)))
        + q(2 * a1 * a1 * s.ng * s.gg);
    ExactForms {
        l1,
        lin1_u1: int(lin1_u1, "lin1"),
        lin1_u2,
        lin2_u1: int(lin2_u1, "lin2"),
        lin2_u2,
        nlin_u1: int(nlin_u1, "nlin"),
        nlin_u2: int(nlin_u2, "nlin"),
        overhead: select_overhead(term_count(&p.counts, p.alpha), table) as i128,
    }
}

/// `(7/3) N_Gamma (alpha-1)(alpha-2)(7 alpha - 12) (log Qn)^2`, the commutation-matrix term.
pub fn leading_term(p: &CostParams) -> Q {
    let a = p.alpha as i128;
    let lq = p.log_qn() as i128;
    frac(7, 3) * q(p.counts.n_gamma() as i128 * (a - 1) * (a - 2) * (7 * a - 12) * lq * lq)
}

/// The published expressions, evaluated literally. `n` is the number of
/// sites of the lattice's own dimension; `log N_s` is rounded up.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PublishedForms {
    pub l1: Q,
    pub lin1: Q,
    pub lin2: Q,
    pub nlin: Q,
    pub select: Q,
}

pub fn published_forms(p: &CostParams, table: &GateCostTable) -> PublishedForms {
    let s = Sym::new(p, table);
    let (a, t, lq, ln, lqq) = (s.a, s.t, s.lq, s.ln, s.lqq);
    let a1 = a - 1;
    let aa = a * (a + 1);
    let lnx = p.log_axes[0] as i128;
    let l1 = q(20 * t + 8);
    let lin1 = q(8 * s.nex * aa * (2 * a1 * lq + 3 * (t + 3 * (lnx + 1) + 1)));
    let lin2 = frac(4, 3) * q(s.nr * aa) * (q(2 * a1 * lq + 3 * t + 3) + frac(3, 4) * q(s.gr));
    let nlin = frac(1, 3)
        * q(s.ng * a1)
        * q(7 * (a - 2) * (7 * a - 12) * lq * lq
            + 16 * (a * a + a - 3) * lq
            + 3 * a1 * (56 * ln + 8 * t + 4 * lqq + 2 * s.gg + 8));
    let nonlin_part = frac(1, 3)
        * q(s.ng * a1)
        * q(7 * (a - 2) * (7 * a - 12) * lq * lq
            + 16 * (a * a + a - 3) * lq
            + 3 * a1 * (28 * ln + 8 * t + 2 * lqq + 2 * s.gg + 8));
    let linear_part = q(aa)
        * ((q(16 * s.nex) + frac(8, 3) * q(s.nr)) * q(a1 * lq)
            + q((24 * s.nex + 4 * s.nr) * t + 72 * s.nex * lnx + 32 * s.nex + 4 * s.nr + s.gr));
    let overhead = q(select_overhead(term_count(&p.counts, p.alpha), table) as i128);
    PublishedForms { l1, lin1, lin2, nlin, select: nonlin_part + linear_part + q(20 * t + 8) + overhead }
}

/// Published maximum VQLS circuit cost.
pub fn published_vqls_max(p: &CostParams, table: &GateCostTable) -> i128 {
    let s = Sym::new(p, table);
    28 * (s.a - 2) * s.lq * s.lq + 28 * s.ln + 2 * s.lqq + 8 * s.t + 24 * s.lq + 4 + s.gg
}

/// Exact cost of the nonlinear term `(k, i, j, l)`, any `q`, `m`.
pub fn nlin_term_cost(p: &CostParams, table: &GateCostTable, k: usize, i: usize, j: usize, l: usize) -> i128 {
    let s = Sym::new(p, table);
    let (k, i, j, l) = (k as i128, i as i128, j as i128, l as i128);
    let t_count = (i - 1) * s.t + (s.a - j) * s.lq + 1;
    let mcx = table.mcx(t_count as u64 + 1) as i128;
    let bbar = if k == 2 { 7 * s.ln } else { 21 * s.ln + 2 * s.lqq };
    mcx + 7 * l * (k + 1) * s.lq * s.lq + bbar + s.gg
}
