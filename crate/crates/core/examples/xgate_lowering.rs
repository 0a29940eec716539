//! Remove negative controls from a mixed-polarity Toffoli cascade by
//! inserting X gates on the position lines, sharing them between
//! neighbouring gates wherever possible.
//!
//! ```text
//! cargo run --example xgate_lowering [mask ...]
//! ```
//!
//! Each mask is a control pattern over the position lines (`1` positive,
//! `0` negative, `-` no control). Default: `11 01 00 10`.

use qimg::circuit::{gate_stats, xgate_lowering, Circuit, Control, Gate, QubitLayout};
use qimg::verify::classical_simulate;

fn main() -> qimg::Result<()> {
    let mut masks: Vec<String> = std::env::args().skip(1).collect();
    if masks.is_empty() {
        masks = ["11", "01", "00", "10"].map(String::from).to_vec();
    }
    let n = masks[0].len();
    let layout = QubitLayout::new(n, 1, 1);
    let target = layout.color(0, 0);
    let gates = masks.iter().map(|m| {
        let controls = m
            .chars()
            .enumerate()
            .filter_map(|(i, c)| match c {
                '1' => Some(Control::pos(i)),
                '0' => Some(Control::neg(i)),
                _ => None,
            })
            .collect();
        Gate::controlled_not(controls, target)
    });
    let cascade = Circuit::from_gates(layout, gates)?;
    let lowered = xgate_lowering(&cascade);

    println!("mixed polarity:");
    cascade.gates().iter().for_each(|g| println!("  {g}"));
    println!("lowered:");
    lowered.gates().iter().for_each(|g| println!("  {g}"));
    println!("{:?}", gate_stats(&lowered));

    let total = layout.total();
    let same = (0..1usize << total).all(|i| {
        let input: Vec<bool> = (0..total).map(|k| (i >> k) & 1 == 1).collect();
        classical_simulate(&cascade, &input).ok() == classical_simulate(&lowered, &input).ok()
    });
    println!("equivalent on all {} basis inputs: {same}", 1 << total);
    Ok(())
}
