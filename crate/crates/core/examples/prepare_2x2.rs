//! Compile a 2x2 grayscale image and print the nonzero amplitudes of the
//! prepared state, decoded back into (position, value) pairs.
//!
//! ```text
//! cargo run --example prepare_2x2 [v00 v01 v10 v11]
//! ```

use qimg::neqr::NeqrImage;
use qimg::pipeline::{run_pipeline, PipelineOptions};
use qimg::verify::statevector_simulate;

fn main() -> qimg::Result<()> {
    let mut values: Vec<u16> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if values.len() != 4 {
        values = vec![193, 194, 255, 0];
    }
    let img = NeqrImage::from_raster(2, 2, 1, 8, &values)?;
    let out = run_pipeline(&img, "2x2", &PipelineOptions::default())?;
    for g in out.circuit.gates() {
        println!("  {g}");
    }

    let sv = statevector_simulate(&out.circuit)?;
    println!("{} qubits, norm {:.12}", sv.qubits(), sv.norm());
    for (i, a) in sv.amplitudes().iter().enumerate() {
        if a.norm() < 1e-12 {
            continue;
        }
        // qubit k is bit k of the index: L0 = y, L1 = x, then C0 (MSB) .. C7
        let (y, x) = (i & 1, (i >> 1) & 1);
        let value = (0..8).fold(0, |acc, j| (acc << 1) | ((i >> (2 + j)) & 1));
        println!("  {:+.6}  |{value:08b}>|{y}{x}>  pixel ({y},{x}) = {value}", a.re);
    }
    Ok(())
}
