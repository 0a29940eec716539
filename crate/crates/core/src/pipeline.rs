//! End-to-end compilation of an image and the run report.
//!
//! Per color line the minterm cover is extracted and minimized; the covers
//! are assembled into one preparation circuit which is then X-lowered and,
//! optionally, decomposed to two-control Toffolis.

use std::fmt::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{decompose_multicontrol, synthesize, xgate_lowering, Circuit, QubitLayout};
use crate::error::{Error, Result};
use crate::esop::minimize;
use crate::neqr::{all_bitplane_covers, ColorLineCover, NeqrImage};
use crate::qasm::emit_qasm;
use crate::verify::{check_equivalence, verify_image, VerifyReport};

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub decompose: bool,
    pub verify: bool,
    /// Worker threads for minimization; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            decompose: true,
            verify: false,
            threads: None,
        }
    }
}

/// Surviving cubes split by the gate they lower to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArityBreakdown {
    /// All-don't-care cubes, emitted as a plain X.
    pub x: usize,
    /// One literal, emitted as a CNOT.
    pub cnot: usize,
    /// Two or more literals.
    pub toffoli: usize,
}

impl ArityBreakdown {
    fn of(cover: &ColorLineCover) -> ArityBreakdown {
        let mut b = ArityBreakdown::default();
        for c in cover.cover.cubes() {
            match c.literal_count() {
                0 => b.x += 1,
                1 => b.cnot += 1,
                _ => b.toffoli += 1,
            }
        }
        b
    }

    fn add(&mut self, o: &ArityBreakdown) {
        self.x += o.x;
        self.cnot += o.cnot;
        self.toffoli += o.toffoli;
    }

    pub fn total(&self) -> usize {
        self.x + self.cnot + self.toffoli
    }
}

/// One row of the report: a channel, or the totals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRow {
    pub label: String,
    pub initial_toffoli_count: usize,
    pub minimized_toffoli_count: usize,
    pub minimized_by_arity: ArityBreakdown,
    pub compression_ratio_percent: f64,
    pub minimize_time_seconds: f64,
    pub overall_gate_count_pre_decomposition: usize,
    pub overall_gate_count_post_decomposition: usize,
    pub qubit_count: usize,
}

/// Compression ratio in percent; 0 when nothing was there to compress.
pub fn compression_ratio(initial: usize, minimized: usize) -> f64 {
    if initial == 0 {
        0.0
    } else {
        100.0 * (initial as f64 - minimized as f64) / initial as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub input: String,
    pub rows: usize,
    pub cols: usize,
    pub h: usize,
    pub w: usize,
    pub q: usize,
    pub channels: Vec<ReportRow>,
    pub total: ReportRow,
    pub decomposed: bool,
    pub covers_equivalent: Option<bool>,
    pub verification: Option<VerifyReport>,
}

impl RunReport {
    /// True unless a requested check failed.
    pub fn verified_ok(&self) -> bool {
        self.covers_equivalent != Some(false) && self.verification.as_ref().is_none_or(|v| v.passed())
    }
}

/// Everything a run produces.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub report: RunReport,
    pub raw_covers: Vec<ColorLineCover>,
    pub minimized_covers: Vec<ColorLineCover>,
    /// H prefix plus mixed-polarity network.
    pub synthesized: Circuit,
    /// After X-gate lowering.
    pub lowered: Circuit,
    /// After decomposition when enabled, otherwise equal to `lowered`.
    pub circuit: Circuit,
    /// Wall time spent in synthesis, lowering and decomposition.
    pub synthesis_time: Duration,
}

impl PipelineOutput {
    pub fn qasm(&self) -> Result<String> {
        emit_qasm(&self.circuit)
    }
}

fn channel_label(channels: usize, c: usize) -> String {
    match (channels, c) {
        (1, _) => "gray".into(),
        (_, 0) => "R".into(),
        (_, 1) => "G".into(),
        (_, 2) => "B".into(),
        _ => format!("ch{c}"),
    }
}

struct Lowered {
    lowered: Circuit,
    decomposed: Circuit,
}

fn lower(synth: &Circuit) -> Lowered {
    let lowered = xgate_lowering(synth);
    let decomposed = decompose_multicontrol(&lowered);
    Lowered { lowered, decomposed }
}

/// Compiles `img`; `input` is only used to label the report.
pub fn run_pipeline(img: &NeqrImage, input: &str, opts: &PipelineOptions) -> Result<PipelineOutput> {
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            pool.install(|| run_inner(img, input, opts))
        }
        None => run_inner(img, input, opts),
    }
}

fn run_inner(img: &NeqrImage, input: &str, opts: &PipelineOptions) -> Result<PipelineOutput> {
    let raw = all_bitplane_covers(img);
    let timed: Vec<(ColorLineCover, Duration)> = raw
        .par_iter()
        .map(|cl| {
            let start = Instant::now();
            let cover = minimize(&cl.cover);
            let elapsed = start.elapsed();
            (
                ColorLineCover {
                    channel: cl.channel,
                    bit: cl.bit,
                    cover,
                },
                elapsed,
            )
        })
        .collect();
    let (minimized, times): (Vec<_>, Vec<_>) = timed.into_iter().unzip();

    let covers_equivalent = if opts.verify {
        let ok = raw
            .par_iter()
            .zip(&minimized)
            .map(|(r, m)| check_equivalence(&r.cover, &m.cover).map(|e| e.is_equivalent()))
            .collect::<Result<Vec<bool>>>()?;
        Some(ok.into_iter().all(|b| b))
    } else {
        None
    };

    let synth_start = Instant::now();
    let layout = QubitLayout::for_image(img);
    let synthesized = synthesize(&minimized, layout)?;
    let Lowered { lowered, decomposed } = lower(&synthesized);
    let circuit = if opts.decompose {
        decomposed.clone()
    } else {
        lowered.clone()
    };
    let synthesis_time = synth_start.elapsed();

    // Per-channel rows use a circuit holding only that channel's color lines.
    let mut rows = Vec::with_capacity(img.channels());
    for ch in 0..img.channels() {
        let pick = |v: &[ColorLineCover]| v.iter().filter(|c| c.channel == ch).cloned().collect::<Vec<_>>();
        let ch_raw = pick(&raw);
        let ch_min = pick(&minimized);
        let ch_time: Duration = minimized
            .iter()
            .zip(&times)
            .filter(|(c, _)| c.channel == ch)
            .map(|(_, t)| *t)
            .sum();
        let reindexed: Vec<ColorLineCover> = ch_min
            .iter()
            .map(|c| ColorLineCover {
                channel: 0,
                ..c.clone()
            })
            .collect();
        let ch_circuit = synthesize(&reindexed, QubitLayout::new(img.position_bits(), img.q(), 1))?;
        let ch_lowered = lower(&ch_circuit);
        let mut arity = ArityBreakdown::default();
        ch_min.iter().for_each(|c| arity.add(&ArityBreakdown::of(c)));
        let initial: usize = ch_raw.iter().map(|c| c.cover.len()).sum();
        let minimized_count = arity.total();
        rows.push(ReportRow {
            label: channel_label(img.channels(), ch),
            initial_toffoli_count: initial,
            minimized_toffoli_count: minimized_count,
            minimized_by_arity: arity,
            compression_ratio_percent: compression_ratio(initial, minimized_count),
            minimize_time_seconds: ch_time.as_secs_f64(),
            overall_gate_count_pre_decomposition: ch_lowered.lowered.len(),
            overall_gate_count_post_decomposition: ch_lowered.decomposed.len(),
            qubit_count: ch_lowered.decomposed.layout().total(),
        });
    }

    let mut arity = ArityBreakdown::default();
    rows.iter().for_each(|r| arity.add(&r.minimized_by_arity));
    let initial: usize = rows.iter().map(|r| r.initial_toffoli_count).sum();
    let total = ReportRow {
        label: "total".into(),
        initial_toffoli_count: initial,
        minimized_toffoli_count: arity.total(),
        minimized_by_arity: arity,
        compression_ratio_percent: compression_ratio(initial, arity.total()),
        minimize_time_seconds: times.iter().sum::<Duration>().as_secs_f64(),
        overall_gate_count_pre_decomposition: lowered.len(),
        overall_gate_count_post_decomposition: decomposed.len(),
        qubit_count: circuit.layout().total(),
    };

    let verification = if opts.verify {
        Some(verify_image(img, &circuit)?)
    } else {
        None
    };

    let report = RunReport {
        input: input.to_string(),
        rows: img.rows(),
        cols: img.cols(),
        h: img.h(),
        w: img.w(),
        q: img.q(),
        channels: rows,
        total,
        decomposed: opts.decompose,
        covers_equivalent,
        verification,
    };
    Ok(PipelineOutput {
        report,
        raw_covers: raw,
        minimized_covers: minimized,
        synthesized,
        lowered,
        circuit,
        synthesis_time,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

pub const TABLE_HEADERS: [&str; 9] = [
    "Image File",
    "Channel",
    "Initial Toffoli Count",
    "Minimized Toffoli Count",
    "Compression Ratio (%)",
    "Time (s)",
    "Overall Gate Count",
    "Pre-Decomposition Gate Count",
    "Qubits",
];

/// Renders the report as pretty JSON or as an aligned text table with one
/// row per channel and a totals row.
pub fn report_emit(report: &RunReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Table => Ok(render_table(report)),
    }
}

fn render_table(report: &RunReport) -> String {
    let row_cells = |r: &ReportRow| -> Vec<String> {
        vec![
            report.input.clone(),
            r.label.clone(),
            r.initial_toffoli_count.to_string(),
            r.minimized_toffoli_count.to_string(),
            format!("{:.2}", r.compression_ratio_percent),
            format!("{:.4}", r.minimize_time_seconds),
            r.overall_gate_count_post_decomposition.to_string(),
            r.overall_gate_count_pre_decomposition.to_string(),
            r.qubit_count.to_string(),
        ]
    };
    let mut rows: Vec<Vec<String>> = vec![TABLE_HEADERS.iter().map(|s| s.to_string()).collect()];
    rows.extend(report.channels.iter().map(row_cells));
    if report.channels.len() > 1 {
        rows.push(row_cells(&report.total));
    }
    let widths: Vec<usize> = (0..TABLE_HEADERS.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
        .collect();

    let mut out = String::new();
    for (k, r) in rows.iter().enumerate() {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| if i < 2 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        if k == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            let _ = writeln!(out, "{}", rule.join("  "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gate_stats;

    #[test]
    fn ratio() {
        assert!((compression_ratio(65810, 17872) - 72.84).abs() < 0.005);
        assert_eq!(compression_ratio(0, 0), 0.0);
        assert_eq!(compression_ratio(10, 10), 0.0);
    }

    #[test]
    fn sample_2x2_run() {
        let img = NeqrImage::from_raster(2, 2, 1, 8, &[193, 194, 255, 0]).unwrap();
        let out = run_pipeline(
            &img,
            "2x2",
            &PipelineOptions {
                verify: true,
                ..Default::default()
            },
        )
        .unwrap();
        let r = &out.report;
        assert_eq!(r.total.initial_toffoli_count, img.popcount());
        assert!(r.verified_ok());
        assert_eq!(r.covers_equivalent, Some(true));
        assert_eq!(r.channels.len(), 1);
        assert_eq!(r.channels[0].label, "gray");
        assert_eq!(r.total.qubit_count, 10);
    }

    #[test]
    fn zero_image_run() {
        let img = NeqrImage::new(2, 2, 8, 1, vec![0; 16]).unwrap();
        let out = run_pipeline(&img, "zero", &PipelineOptions::default()).unwrap();
        assert_eq!(out.report.total.initial_toffoli_count, 0);
        assert_eq!(out.report.total.compression_ratio_percent, 0.0);
        assert_eq!(gate_stats(&out.circuit).total, 4); // only the H prefix
        assert!(report_emit(&out.report, ReportFormat::Json).is_ok());
    }

    #[test]
    fn table_has_headers_and_totals() {
        let img = NeqrImage::from_raster(2, 2, 3, 8, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]).unwrap();
        let out = run_pipeline(&img, "rgb.ppm", &PipelineOptions::default()).unwrap();
        let t = report_emit(&out.report, ReportFormat::Table).unwrap();
        let lines: Vec<&str> = t.lines().collect();
        for h in TABLE_HEADERS {
            assert!(lines[0].contains(h), "missing header {h}");
        }
        assert_eq!(lines.len(), 2 + 3 + 1);
        assert!(lines[2].contains(" R "));
        assert!(lines[5].contains("total"));
    }
}
