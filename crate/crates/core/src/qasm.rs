//! OpenQASM 2.0 emission for decomposed, positive-control circuits.

use std::fmt::Write;

use crate::circuit::{Circuit, Gate, GateKind, Line, Polarity, QubitLayout};
use crate::error::{Error, Result};

fn qubit_name(layout: &QubitLayout, index: usize) -> String {
    match layout.line(index) {
        Some(Line::Position(i)) => format!("pos[{i}]"),
        Some(Line::Color { channel, bit }) => format!("col{channel}[{bit}]"),
        Some(Line::Ancilla(a)) => format!("anc[{a}]"),
        None => unreachable!("line {index} validated on push"),
    }
}

fn emit_error(gate: &Gate, reason: &str) -> Error {
    Error::Emit {
        gate: gate.to_string(),
        reason: reason.to_string(),
    }
}

/// Renders the circuit as `x`/`h`/`cx`/`ccx` statements.
///
/// Gates with three or more controls, or with negative controls, have no
/// direct QASM spelling here and are rejected; run
/// [`crate::circuit::xgate_lowering`] and
/// [`crate::circuit::decompose_multicontrol`] first.
pub fn emit_qasm(circuit: &Circuit) -> Result<String> {
    let layout = circuit.layout();
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "// position line L_i -> pos[i]; L_0 is the most significant y bit");
    let _ = writeln!(
        out,
        "// color line C_j of channel c -> colc[j]; C_0 is the most significant bit"
    );
    if layout.ancillas > 0 {
        let _ = writeln!(out, "// ancilla A_k -> anc[k]");
    }
    if layout.position_bits > 0 {
        let _ = writeln!(out, "qreg pos[{}];", layout.position_bits);
    }
    for c in 0..layout.channels {
        let _ = writeln!(out, "qreg col{c}[{}];", layout.depth);
    }
    if layout.ancillas > 0 {
        let _ = writeln!(out, "qreg anc[{}];", layout.ancillas);
    }

    for gate in circuit.gates() {
        if gate.controls().iter().any(|c| c.polarity == Polarity::Negative) {
            return Err(emit_error(gate, "negative control; lower it first"));
        }
        let op = match (gate.kind(), gate.controls().len()) {
            (GateKind::X, 0) => "x",
            (GateKind::H, 0) => "h",
            (GateKind::Cnot, 1) => "cx",
            (GateKind::Toffoli, 2) => "ccx",
            (GateKind::Toffoli, _) => return Err(emit_error(gate, "more than two controls; decompose it first")),
            _ => return Err(emit_error(gate, "malformed gate")),
        };
        let args: Vec<String> = gate
            .controls()
            .iter()
            .map(|c| c.line)
            .chain(std::iter::once(gate.target()))
            .map(|l| qubit_name(layout, l))
            .collect();
        let _ = writeln!(out, "{op} {};", args.join(","));
    }
    Ok(out)
}
