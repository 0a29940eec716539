//! Compile an image file, or a set of synthetic test patterns, and print
//! the compression table.
//!
//! ```text
//! cargo run --release --example compress_image [image.pgm|image.ppm|image.png ...]
//! ```

use qimg::neqr::{load_image, NeqrImage};
use qimg::pipeline::{report_emit, run_pipeline, PipelineOptions, ReportFormat};

fn patterns() -> qimg::Result<Vec<(String, NeqrImage)>> {
    let side = 7;
    Ok(vec![
        (
            "horizontal".into(),
            NeqrImage::from_fn(side, side, 8, 1, |y, _, _| (2 * y) as u16)?,
        ),
        (
            "vertical".into(),
            NeqrImage::from_fn(side, side, 8, 1, |_, x, _| (2 * x) as u16)?,
        ),
        (
            "checker".into(),
            NeqrImage::from_fn(
                side,
                side,
                8,
                1,
                |y, x, _| if (y / 16 + x / 16) % 2 == 0 { 255 } else { 0 },
            )?,
        ),
        (
            "diagonal".into(),
            NeqrImage::from_fn(side, side, 8, 1, |y, x, _| ((y + x) % 256) as u16)?,
        ),
        (
            "rgb bands".into(),
            NeqrImage::from_fn(side, side, 8, 3, |y, x, c| [y * 2, x * 2, 255 - y * 2][c] as u16)?,
        ),
    ])
}

fn main() -> qimg::Result<()> {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    let images = if paths.is_empty() {
        patterns()?
    } else {
        paths
            .into_iter()
            .map(|p| load_image(&p).map(|i| (p, i)))
            .collect::<qimg::Result<_>>()?
    };
    for (label, img) in images {
        let out = run_pipeline(&img, &label, &PipelineOptions::default())?;
        print!("{}", report_emit(&out.report, ReportFormat::Table)?);
        println!();
    }
    Ok(())
}
