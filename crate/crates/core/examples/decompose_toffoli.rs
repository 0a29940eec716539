//! Break a k-control Toffoli into two-control Toffolis over a clean
//! ancilla ladder and print the resulting OpenQASM.
//!
//! ```text
//! cargo run --example decompose_toffoli [k]
//! ```

use qimg::circuit::{decompose_multicontrol, gate_stats, Circuit, Control, Gate, QubitLayout};
use qimg::qasm::emit_qasm;

fn main() -> qimg::Result<()> {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5).max(1);
    let layout = QubitLayout::new(k, 1, 1);
    let gate = Gate::controlled_not((0..k).map(Control::pos).collect(), layout.color(0, 0));
    let d = decompose_multicontrol(&Circuit::from_gates(layout, [gate])?);
    let s = gate_stats(&d);
    eprintln!(
        "{k} controls -> {} Toffoli + {} CNOT, {} ancillas",
        s.toffoli,
        s.cnot,
        d.layout().ancillas
    );
    print!("{}", emit_qasm(&d)?);
    Ok(())
}
