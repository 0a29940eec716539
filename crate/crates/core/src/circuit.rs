//! Gate-level IR and the passes that turn minimized covers into a
//! positive-control `{X, H, CNOT, Toffoli}` circuit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esop::Trit;
use crate::neqr::{ColorLineCover, NeqrImage};

/// Which register a qubit line belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Line {
    /// `L_i`; `L_0` is the most significant y bit.
    Position(usize),
    /// `C_bit` of a channel; `C_0` is the most significant bitplane.
    Color {
        channel: usize,
        bit: usize,
    },
    Ancilla(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Line::Position(i) => write!(f, "L{i}"),
            Line::Color { channel, bit } => write!(f, "C{bit}/{channel}"),
            Line::Ancilla(a) => write!(f, "A{a}"),
        }
    }
}

/// Flat qubit numbering: position lines, then each channel's color lines,
/// then ancillas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QubitLayout {
    pub position_bits: usize,
    pub depth: usize,
    pub channels: usize,
    pub ancillas: usize,
}

impl QubitLayout {
    pub fn new(position_bits: usize, depth: usize, channels: usize) -> QubitLayout {
        QubitLayout {
            position_bits,
            depth,
            channels,
            ancillas: 0,
        }
    }

    pub fn for_image(img: &NeqrImage) -> QubitLayout {
        QubitLayout::new(img.position_bits(), img.q(), img.channels())
    }

    #[inline]
    pub fn position(&self, i: usize) -> usize {
        debug_assert!(i < self.position_bits);
        i
    }

    #[inline]
    pub fn color(&self, channel: usize, bit: usize) -> usize {
        debug_assert!(channel < self.channels && bit < self.depth);
        self.position_bits + channel * self.depth + bit
    }

    #[inline]
    pub fn ancilla(&self, a: usize) -> usize {
        debug_assert!(a < self.ancillas);
        self.position_bits + self.channels * self.depth + a
    }

    pub fn color_lines(&self) -> usize {
        self.channels * self.depth
    }

    pub fn total(&self) -> usize {
        self.position_bits + self.color_lines() + self.ancillas
    }

    /// Maps a flat line index back to its role.
    pub fn line(&self, index: usize) -> Option<Line> {
        let colors = self.position_bits + self.color_lines();
        if index < self.position_bits {
            Some(Line::Position(index))
        } else if index < colors {
            let k = index - self.position_bits;
            Some(Line::Color {
                channel: k / self.depth,
                bit: k % self.depth,
            })
        } else if index < colors + self.ancillas {
            Some(Line::Ancilla(index - colors))
        } else {
            None
        }
    }

    pub fn is_position(&self, index: usize) -> bool {
        index < self.position_bits
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Fires when the line is 1.
    Positive,
    /// Fires when the line is 0.
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub line: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(line: usize) -> Control {
        Control {
            line,
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(line: usize) -> Control {
        Control {
            line,
            polarity: Polarity::Negative,
        }
    }

    /// Whether the control fires for a line value.
    #[inline]
    pub fn fires(&self, bit: bool) -> bool {
        bit == (self.polarity == Polarity::Positive)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    H,
    Cnot,
    /// Two or more controls.
    Toffoli,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    controls: Vec<Control>,
    target: usize,
}

impl Gate {
    pub fn x(target: usize) -> Gate {
        Gate {
            kind: GateKind::X,
            controls: Vec::new(),
            target,
        }
    }

    pub fn h(target: usize) -> Gate {
        Gate {
            kind: GateKind::H,
            controls: Vec::new(),
            target,
        }
    }

    pub fn cnot(control: Control, target: usize) -> Gate {
        Gate {
            kind: GateKind::Cnot,
            controls: vec![control],
            target,
        }
    }

    /// A NOT on `target` conditioned on every control; picks X, CNOT or
    /// Toffoli by control count.
    pub fn controlled_not(controls: Vec<Control>, target: usize) -> Gate {
        let kind = match controls.len() {
            0 => GateKind::X,
            1 => GateKind::Cnot,
            _ => GateKind::Toffoli,
        };
        assert!(
            controls.iter().all(|c| c.line != target),
            "control and target share line {target}"
        );
        Gate { kind, controls, target }
    }

    #[inline]
    pub fn kind(&self) -> GateKind {
        self.kind
    }

    #[inline]
    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    #[inline]
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn has_negative_control(&self) -> bool {
        self.controls.iter().any(|c| c.polarity == Polarity::Negative)
    }

    fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().map(|c| c.line).chain(std::iter::once(self.target))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOF",
        };
        write!(f, "{name}(")?;
        for c in &self.controls {
            let mark = if c.polarity == Polarity::Negative { "~" } else { "" };
            write!(f, "{mark}{}, ", c.line)?;
        }
        write!(f, "{})", self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    layout: QubitLayout,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: QubitLayout) -> Circuit {
        Circuit {
            layout,
            gates: Vec::new(),
        }
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate, checking that every line exists.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let total = self.layout.total();
        if let Some(l) = gate.lines().find(|&l| l >= total) {
            return Err(Error::LayoutMismatch(format!(
                "gate {gate} uses line {l} but the layout has {total} lines"
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Builds a circuit from gates, validating every line.
    pub fn from_gates(layout: QubitLayout, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(layout);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// The circuit with its leading run of H gates removed, leaving the
    /// classical reversible network.
    pub fn without_h_prefix(&self) -> Circuit {
        let skip = self.gates.iter().take_while(|g| g.kind == GateKind::H).count();
        Circuit {
            layout: self.layout,
            gates: self.gates[skip..].to_vec(),
        }
    }
}

/// Maps one cube symbol to a control on position line `i`.
fn control_for(layout: &QubitLayout, i: usize, t: Trit) -> Option<Control> {
    match t {
        Trit::Zero => Some(Control::neg(layout.position(i))),
        Trit::One => Some(Control::pos(layout.position(i))),
        Trit::DontCare => None,
    }
}

/// Assembles the preparation circuit: H on every position line, then one
/// NOT per cube, channel by channel and `C_0 … C_{q-1}` within a channel.
///
/// Covers are placed in the order given after a stable sort on
/// `(channel, bit)`; cubes keep their cover order.
pub fn synthesize(covers: &[ColorLineCover], layout: QubitLayout) -> Result<Circuit> {
    let mut ordered: Vec<&ColorLineCover> = covers.iter().collect();
    ordered.sort_by_key(|c| (c.channel, c.bit));

    let mut circuit = Circuit::new(layout);
    for i in 0..layout.position_bits {
        circuit.push(Gate::h(layout.position(i)))?;
    }
    for cl in ordered {
        if cl.cover.num_vars() != layout.position_bits {
            return Err(Error::LayoutMismatch(format!(
                "cover over {} variables, layout has {} position lines",
                cl.cover.num_vars(),
                layout.position_bits
            )));
        }
        if cl.channel >= layout.channels || cl.bit >= layout.depth {
            return Err(Error::LayoutMismatch(format!(
                "color line C{} of channel {} not in layout",
                cl.bit, cl.channel
            )));
        }
        let target = layout.color(cl.channel, cl.bit);
        for cube in cl.cover.cubes() {
            let controls = cube
                .trits()
                .enumerate()
                .filter_map(|(i, t)| control_for(&layout, i, t))
                .collect();
            circuit.push(Gate::controlled_not(controls, target))?;
        }
    }
    Ok(circuit)
}

/// Rewrites every negative control as a positive one by bracketing lines
/// with X gates, tracking which lines are currently inverted.
///
/// Lines left inverted after the last gate get a closing X, so the output
/// computes the same permutation as the input.
pub fn xgate_lowering(circuit: &Circuit) -> Circuit {
    let layout = circuit.layout;
    let mut flipped = vec![false; layout.total()];
    let mut out = Circuit::new(layout);
    let emit = |out: &mut Circuit, g: Gate| out.gates.push(g);

    for gate in &circuit.gates {
        if gate.kind == GateKind::H && flipped[gate.target] {
            // H does not commute with X; undo the pending flip first.
            emit(&mut out, Gate::x(gate.target));
            flipped[gate.target] = false;
        }
        let mut controls = Vec::with_capacity(gate.controls.len());
        for c in &gate.controls {
            let want_flip = c.polarity == Polarity::Negative;
            if flipped[c.line] != want_flip {
                emit(&mut out, Gate::x(c.line));
                flipped[c.line] = want_flip;
            }
            controls.push(Control::pos(c.line));
        }
        emit(
            &mut out,
            Gate {
                kind: gate.kind,
                controls,
                target: gate.target,
            },
        );
    }
    for (line, &f) in flipped.iter().enumerate() {
        if f {
            emit(&mut out, Gate::x(line));
        }
    }
    out
}

/// Expands every gate with `k ≥ 3` controls into a ladder of `k - 1`
/// two-control Toffolis into ancillas, a CNOT onto the target, and the
/// mirrored ladder. The ancilla pool is shared and sized to the widest gate.
pub fn decompose_multicontrol(circuit: &Circuit) -> Circuit {
    let widest = circuit
        .gates
        .iter()
        .map(|g| g.controls.len())
        .filter(|&k| k >= 3)
        .max()
        .unwrap_or(0);
    let mut layout = circuit.layout;
    layout.ancillas = layout.ancillas.max(widest.saturating_sub(1));
    let mut out = Circuit::new(layout);

    for gate in &circuit.gates {
        let k = gate.controls.len();
        if k < 3 {
            out.gates.push(gate.clone());
            continue;
        }
        let anc = |a: usize| layout.ancilla(a);
        let mut ladder = Vec::with_capacity(k - 1);
        ladder.push(Gate::controlled_not(vec![gate.controls[0], gate.controls[1]], anc(0)));
        for (i, c) in gate.controls[2..].iter().enumerate() {
            ladder.push(Gate::controlled_not(vec![*c, Control::pos(anc(i))], anc(i + 1)));
        }
        out.gates.extend(ladder.iter().cloned());
        out.gates.push(Gate::cnot(Control::pos(anc(k - 2)), gate.target));
        out.gates.extend(ladder.into_iter().rev());
    }
    out
}

/// Gate tally by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateStats {
    pub x: usize,
    pub h: usize,
    pub cnot: usize,
    pub toffoli: usize,
    pub total: usize,
}

pub fn gate_stats(circuit: &Circuit) -> GateStats {
    let mut s = GateStats::default();
    for g in &circuit.gates {
        match g.kind {
            GateKind::X => s.x += 1,
            GateKind::H => s.h += 1,
            GateKind::Cnot => s.cnot += 1,
            GateKind::Toffoli => s.toffoli += 1,
        }
    }
    s.total = circuit.gates.len();
    s
}
