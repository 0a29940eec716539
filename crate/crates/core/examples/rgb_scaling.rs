//! RGB scaling sweep: compile random RGB images from 10x10 up to 200x200
//! pixels in 10-pixel steps and print one CSV row per size.
//!
//! ```text
//! cargo run --release --example rgb_scaling [max_side] [seed]
//! ```

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qimg::neqr::NeqrImage;
use qimg::pipeline::{run_pipeline, PipelineOptions};

fn main() -> qimg::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_side: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(14);
    let mut rng = StdRng::seed_from_u64(seed);

    println!("side,padded_rows,padded_cols,initial_toffoli,minimized_toffoli,compression_percent,minimize_seconds,wall_seconds");
    for side in (10..=max_side).step_by(10) {
        let data: Vec<u16> = (0..side * side * 3).map(|_| rng.random_range(0..256u16)).collect();
        let img = NeqrImage::from_raster(side, side, 3, 8, &data)?;
        let start = std::time::Instant::now();
        let out = run_pipeline(&img, &format!("{side}x{side}"), &PipelineOptions::default())?;
        let t = &out.report.total;
        println!(
            "{side},{},{},{},{},{:.2},{:.3},{:.3}",
            1 << img.h(),
            1 << img.w(),
            t.initial_toffoli_count,
            t.minimized_toffoli_count,
            t.compression_ratio_percent,
            t.minimize_time_seconds,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
