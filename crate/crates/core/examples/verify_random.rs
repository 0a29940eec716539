//! Compile a batch of random images and check every one against the
//! independent oracles: exhaustive cover equivalence per bitplane and a
//! bit-sliced simulation of the full circuit at every position.
//!
//! ```text
//! cargo run --release --example verify_random [count] [seed]
//! ```

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qimg::neqr::NeqrImage;
use qimg::pipeline::{run_pipeline, PipelineOptions};

fn main() -> qimg::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = StdRng::seed_from_u64(seed);
    let opts = PipelineOptions {
        verify: true,
        ..Default::default()
    };

    let mut failures = 0;
    for i in 0..count {
        let (h, w) = (rng.random_range(0..=4), rng.random_range(0..=4));
        let channels = if rng.random_bool(0.2) { 3 } else { 1 };
        let img = NeqrImage::random(h, w, 8, channels, &mut rng)?;
        let out = run_pipeline(&img, "random", &opts)?;
        let r = &out.report;
        let ok = r.verified_ok();
        failures += usize::from(!ok);
        println!(
            "{i:>4} {:>2}x{:<2} ch={channels} cubes {:>5} -> {:<5} gates {:>6}  {}",
            1 << h,
            1 << w,
            r.total.initial_toffoli_count,
            r.total.minimized_toffoli_count,
            r.total.overall_gate_count_post_decomposition,
            if ok { "ok" } else { "FAILED" }
        );
    }
    println!("{} of {count} verified", count - failures);
    if failures > 0 {
        std::process::exit(2);
    }
    Ok(())
}
