//! Two-stage circuits for embedded terms: `U = U1 U2`, so the completion
//! gates and the ancilla flip run first and the Gram-controlled MCX last.

use lcnu_core::{EmbeddedTerm, Real, Slot};

use crate::builders::lower_factor;
use crate::error::Result;
use crate::gate::{BlockKind, Circuit, Control, Gate};

pub fn compile_term<T: Real>(e: &EmbeddedTerm<T>) -> Result<Circuit<T>> {
    let n = e.qubits() as usize;
    let mut c = Circuit::new(n + 1);
    c.ancilla = Some(n);
    // the rightmost layer acts first
    for layer in e.u2_completion.layers.iter().rev() {
        let mut top = 0usize;
        for f in layer {
            let k = f.qubits() as usize;
            if !matches!(f, lcnu_core::BasisFactor::Identity(_)) {
                let (sub, kind) = lower_factor(f)?;
                c.append_block(&sub, n - top - k, kind, f.label())?;
            }
            top += k;
        }
    }
    let start = c.len();
    c.push(Gate::x(n))?;
    c.blocks.push(crate::gate::Block { kind: BlockKind::AncillaFlip, name: "X".into(), start, end: c.len() });
    let controls: Vec<Control> = e
        .u1_controls
        .pattern
        .iter()
        .enumerate()
        .filter_map(|(p, s)| match s {
            Slot::Zero => Some(Control::open(n - 1 - p)),
            Slot::One => Some(Control::closed(n - 1 - p)),
            Slot::Free => None,
        })
        .collect();
    let start = c.len();
    c.push(Gate::mcx(controls, n))?;
    c.blocks.push(crate::gate::Block { kind: BlockKind::GramControl, name: "U1".into(), start, end: c.len() });
    Ok(c)
}
