//! Brute-force oracles: cover evaluation, equivalence checking, classical
//! reversible simulation and a small dense statevector simulator.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::esop::{EsopCover, Trit};
use crate::neqr::{ideal_map, NeqrImage};

/// Variable count up to which [`check_equivalence`] enumerates every
/// assignment.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Random assignments drawn above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLE_COUNT: usize = 1_000_000;

/// Dense statevector size limit.
pub const MAX_STATEVECTOR_QUBITS: usize = 14;

/// Values of the position variables, in cube symbol order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    /// Spells `index` in `len` bits, most significant first.
    pub fn from_index(len: usize, index: u64) -> Assignment {
        Assignment((0..len).map(|i| (index >> (len - 1 - i)) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Assignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

/// XOR over cubes of "every literal agrees with the assignment".
pub fn esop_eval(cover: &EsopCover, a: &Assignment) -> Result<bool> {
    if a.len() != cover.num_vars() {
        return Err(Error::LengthMismatch {
            expected: cover.num_vars(),
            got: a.len(),
        });
    }
    let mut acc = false;
    for cube in cover.cubes() {
        let hit = cube.trits().zip(&a.0).all(|(t, &bit)| match t {
            Trit::DontCare => true,
            Trit::Zero => !bit,
            Trit::One => bit,
        });
        acc ^= hit;
    }
    Ok(acc)
}

/// The cover's full truth table, indexed by assignment integer. Each cube
/// toggles exactly the assignments it matches.
pub fn truth_table(cover: &EsopCover) -> Vec<bool> {
    let n = cover.num_vars();
    assert!(n <= 30, "truth table over {n} variables is too large");
    let mut table = vec![false; 1usize << n];
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    for cube in cover.cubes() {
        let free = !cube.care_mask() & full;
        let base = cube.value_mask();
        // walk every subset of the don't-care bits
        let mut sub = free;
        loop {
            let idx = (base | sub) as usize;
            table[idx] = !table[idx];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    table
}

/// Result of comparing two covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// No difference found over `checked` assignments; `exhaustive` says
    /// whether that was every assignment.
    Equivalent {
        checked: u64,
        exhaustive: bool,
    },
    Counterexample(Assignment),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Compares two covers exhaustively up to [`EXHAUSTIVE_LIMIT`] variables and
/// by seeded random sampling above it. On failure returns the smallest
/// (exhaustive) or first drawn (sampled) differing assignment.
pub fn check_equivalence(c1: &EsopCover, c2: &EsopCover) -> Result<Equivalence> {
    let n = c1.num_vars();
    if c2.num_vars() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: c2.num_vars(),
        });
    }
    if n <= EXHAUSTIVE_LIMIT {
        let (t1, t2) = (truth_table(c1), truth_table(c2));
        return Ok(match t1.iter().zip(&t2).position(|(a, b)| a != b) {
            Some(i) => Equivalence::Counterexample(Assignment::from_index(n, i as u64)),
            None => Equivalence::Equivalent {
                checked: 1 << n,
                exhaustive: true,
            },
        });
    }

    let mut rng = StdRng::seed_from_u64(0x7174_6c69_7465);
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let samples: Vec<u64> = (0..SAMPLE_COUNT).map(|_| rng.random::<u64>() & full).collect();
    let eval = |c: &EsopCover, a: u64| c.cubes().iter().filter(|k| k.matches(a)).count() % 2 == 1;
    let bad = samples.par_iter().position_first(|&a| eval(c1, a) != eval(c2, a));
    Ok(match bad {
        Some(i) => Equivalence::Counterexample(Assignment::from_index(n, samples[i])),
        None => Equivalence::Equivalent {
            checked: SAMPLE_COUNT as u64,
            exhaustive: false,
        },
    })
}

fn require_classical(gate: &Gate) -> Result<()> {
    if gate.kind() == GateKind::H {
        Err(Error::NotClassical(gate.to_string()))
    } else {
        Ok(())
    }
}

/// Pushes one classical bit per line through the circuit.
///
/// `input` has one entry per layout line. Mixed polarities are honored.
pub fn classical_simulate(circuit: &Circuit, input: &[bool]) -> Result<Vec<bool>> {
    let total = circuit.layout().total();
    if input.len() != total {
        return Err(Error::LengthMismatch {
            expected: total,
            got: input.len(),
        });
    }
    let mut state = input.to_vec();
    for gate in circuit.gates() {
        require_classical(gate)?;
        if gate.controls().iter().all(|c| c.fires(state[c.line])) {
            state[gate.target()] = !state[gate.target()];
        }
    }
    Ok(state)
}

/// Bit-sliced variant of [`classical_simulate`]: each word carries 64
/// independent basis inputs, one per bit lane.
pub fn classical_simulate_lanes(circuit: &Circuit, lines: &mut [u64]) -> Result<()> {
    let total = circuit.layout().total();
    if lines.len() != total {
        return Err(Error::LengthMismatch {
            expected: total,
            got: lines.len(),
        });
    }
    for gate in circuit.gates() {
        require_classical(gate)?;
        let mut fire = u64::MAX;
        for c in gate.controls() {
            let v = lines[c.line];
            fire &= if c.fires(true) { v } else { !v };
        }
        lines[gate.target()] ^= fire;
    }
    Ok(())
}

/// Amplitudes over `2^qubits` basis states. Qubit `k` (layout line `k`) is
/// bit `k` of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` over `qubits` qubits.
    pub fn zero(qubits: usize) -> Result<StateVector> {
        if qubits > MAX_STATEVECTOR_QUBITS {
            return Err(Error::QubitBudget {
                needed: qubits,
                limit: MAX_STATEVECTOR_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Basis index with qubit `k` set to `bits[k]`.
    pub fn basis_index(bits: &[bool]) -> usize {
        bits.iter()
            .enumerate()
            .fold(0, |acc, (k, &b)| acc | ((b as usize) << k))
    }

    pub fn apply(&mut self, gate: &Gate) {
        let t = 1usize << gate.target();
        let (mut need_one, mut need_zero) = (0usize, 0usize);
        for c in gate.controls() {
            if c.fires(true) {
                need_one |= 1 << c.line;
            } else {
                need_zero |= 1 << c.line;
            }
        }
        let frac = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & t != 0 || i & need_one != need_one || i & need_zero != 0 {
                continue;
            }
            let j = i | t;
            match gate.kind() {
                GateKind::H => {
                    let (a, b) = (self.amps[i], self.amps[j]);
                    self.amps[i] = (a + b) * frac;
                    self.amps[j] = (a - b) * frac;
                }
                _ => self.amps.swap(i, j),
            }
        }
    }
}

/// Applies the circuit to `|0…0⟩`.
pub fn statevector_simulate(circuit: &Circuit) -> Result<StateVector> {
    let mut sv = StateVector::zero(circuit.layout().total())?;
    for g in circuit.gates() {
        sv.apply(g);
    }
    Ok(sv)
}

/// One position whose recovered color differs from the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub position: usize,
    pub y: usize,
    pub x: usize,
    pub channel: usize,
    pub expected: u16,
    pub actual: u16,
}

/// Outcome of [`verify_image`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub positions_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub position_lines_restored: bool,
    pub ancillas_clean: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.position_lines_restored && self.ancillas_clean
    }
}

/// Checks that the circuit's leading gates are exactly one H per position
/// line, in line order.
pub fn has_h_prefix(circuit: &Circuit) -> bool {
    let n = circuit.layout().position_bits;
    circuit.gates().len() >= n
        && circuit.gates()[..n]
            .iter()
            .enumerate()
            .all(|(i, g)| g.kind() == GateKind::H && g.target() == i)
}

/// Runs every position basis state through the post-H network and compares
/// the color lines with the image.
///
/// Fails only if the circuit does not fit the image (layout, H prefix, or a
/// stray H later on); wrong colors and dirty lines are report content.
pub fn verify_image(img: &NeqrImage, circuit: &Circuit) -> Result<VerifyReport> {
    let layout = *circuit.layout();
    if layout.position_bits != img.position_bits() || layout.depth != img.q() || layout.channels != img.channels() {
        return Err(Error::LayoutMismatch(format!(
            "circuit layout {layout:?} does not fit a 2^{} x 2^{} x {} image of depth {}",
            img.h(),
            img.w(),
            img.channels(),
            img.q()
        )));
    }
    if !has_h_prefix(circuit) {
        return Err(Error::LayoutMismatch(
            "circuit does not start with H on every position line".into(),
        ));
    }
    let network = Circuit::from_gates(layout, circuit.gates()[layout.position_bits..].iter().cloned())?;
    if let Some(g) = network.gates().iter().find(|g| g.kind() == GateKind::H) {
        return Err(Error::NotClassical(g.to_string()));
    }

    let ideal = ideal_map(img);
    let n = layout.position_bits;
    let positions = img.num_positions();
    let chunks: Vec<usize> = (0..positions).step_by(64).collect();

    let partials: Vec<(Vec<Mismatch>, bool, bool)> = chunks
        .par_iter()
        .map(|&base| {
            let lanes = (positions - base).min(64);
            let lane_mask = if lanes == 64 { u64::MAX } else { (1u64 << lanes) - 1 };
            let mut lines = vec![0u64; layout.total()];
            for (i, word) in lines.iter_mut().take(n).enumerate() {
                for lane in 0..lanes {
                    let p = base + lane;
                    *word |= (((p >> (n - 1 - i)) & 1) as u64) << lane;
                }
            }
            let input: Vec<u64> = lines[..n].to_vec();
            classical_simulate_lanes(&network, &mut lines).expect("layout checked above");

            let restored = lines[..n].iter().zip(&input).all(|(a, b)| (a ^ b) & lane_mask == 0);
            let clean = (0..layout.ancillas).all(|a| lines[layout.ancilla(a)] & lane_mask == 0);

            let mut mismatches = Vec::new();
            for lane in 0..lanes {
                let p = base + lane;
                for (ch, &expected) in ideal.get(p).iter().enumerate() {
                    let actual = (0..layout.depth).fold(0u16, |acc, j| {
                        let bit = (lines[layout.color(ch, j)] >> lane) & 1;
                        (acc << 1) | bit as u16
                    });
                    if actual != expected {
                        mismatches.push(Mismatch {
                            position: p,
                            y: p >> img.w(),
                            x: p & ((1 << img.w()) - 1),
                            channel: ch,
                            expected,
                            actual,
                        });
                    }
                }
            }
            (mismatches, restored, clean)
        })
        .collect();

    let mut report = VerifyReport {
        positions_checked: positions,
        mismatches: Vec::new(),
        position_lines_restored: true,
        ancillas_clean: true,
    };
    for (m, restored, clean) in partials {
        report.mismatches.extend(m);
        report.position_lines_restored &= restored;
        report.ancillas_clean &= clean;
    }
    Ok(report)
}
