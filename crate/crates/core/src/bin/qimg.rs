//! `qimg`: image in, minimized NEQR circuit and report out.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use qimg::neqr::{load_image, NeqrImage};
use qimg::pipeline::{report_emit, run_pipeline, PipelineOptions, ReportFormat};
use qimg::Error;

const EXIT_IO: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Side length (in bit count) of the random self-test image: 16 x 16.
const SELF_TEST_BITS: usize = 4;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "qimg",
    version,
    about = "Compile an image into a minimized NEQR preparation circuit"
)]
struct Args {
    /// PGM/PPM (P2, P3, P5, P6) or PNG image with 8-bit samples.
    input: Option<PathBuf>,

    /// Write the OpenQASM 2.0 circuit here.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write the run report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Check every position of the compiled circuit against the image.
    #[arg(long)]
    verify: bool,

    /// Keep gates with three or more controls intact.
    #[arg(long)]
    no_decompose: bool,

    /// Minimization worker threads.
    #[arg(long, env = "QIMG_THREADS")]
    threads: Option<usize>,

    /// Compile a random 16x16 grayscale image from this seed and verify it.
    #[arg(long)]
    seed: Option<u64>,

    /// Print synthesis and emission timings to stderr.
    #[arg(long, short)]
    verbose: bool,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qimg: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if args.threads == Some(0) {
        return fail(EXIT_USAGE, "--threads must be at least 1");
    }

    let (img, label): (NeqrImage, String) = match (&args.input, args.seed) {
        (Some(path), None) => match load_image(path) {
            Ok(img) => (img, path.display().to_string()),
            Err(e) => return fail(EXIT_IO, e),
        },
        (None, Some(seed)) => {
            let mut rng = StdRng::seed_from_u64(seed);
            let img = NeqrImage::random(SELF_TEST_BITS, SELF_TEST_BITS, 8, 1, &mut rng).expect("valid dimensions");
            (img, format!("random:{seed}"))
        }
        (Some(_), Some(_)) => return fail(EXIT_USAGE, "give either an input image or --seed, not both"),
        (None, None) => return fail(EXIT_USAGE, "missing input image (or --seed for a self-test)"),
    };

    let opts = PipelineOptions {
        decompose: !args.no_decompose,
        verify: args.verify || args.seed.is_some(),
        threads: args.threads,
    };
    let out = match run_pipeline(&img, &label, &opts) {
        Ok(o) => o,
        Err(e @ Error::Io(_)) => return fail(EXIT_IO, e),
        Err(e) => return fail(EXIT_VERIFY, e),
    };
    if args.verbose {
        eprintln!("synthesis: {:.4} s", out.synthesis_time.as_secs_f64());
    }

    if let Some(path) = &args.out {
        let start = std::time::Instant::now();
        let qasm = match out.qasm() {
            Ok(q) => q,
            Err(e) => return fail(EXIT_USAGE, format!("{e} (drop --no-decompose to emit this circuit)")),
        };
        if let Err(e) = std::fs::write(path, qasm) {
            return fail(EXIT_IO, format!("{}: {e}", path.display()));
        }
        if args.verbose {
            eprintln!("emission: {:.4} s", start.elapsed().as_secs_f64());
        }
    }

    let format = match args.format {
        Format::Json => ReportFormat::Json,
        Format::Table => ReportFormat::Table,
    };
    let text = match report_emit(&out.report, format) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_IO, e),
    };
    match &args.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return fail(EXIT_IO, format!("{}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }

    if !out.report.verified_ok() {
        return fail(EXIT_VERIFY, "verification failed");
    }
    ExitCode::SUCCESS
}
