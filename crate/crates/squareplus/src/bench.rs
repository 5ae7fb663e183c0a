//! Microbenchmark harness for the activation kernels.
//!
//! Measures whole passes of the value kernel over one shared input buffer:
//! every activation sees the exact same bytes, generated once from a seeded
//! RNG, so seeds make runs reproducible and comparisons paired. Per-pass wall
//! times are reduced to the median and minimum, reported as nanoseconds per
//! element. Outputs are folded into a checksum that lands in the record: the
//! optimizer cannot discard the work, and two runs of the same config must
//! agree on it bit-for-bit.
//!
//! Defaults stay deliberately single-threaded: the point of the comparison is
//! per-element cost, not parallel scaling.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::activations::{Activation, ActivationError};
use crate::fmt::f64_lossless;
use crate::kernels::{apply, checksum, Exec};
use crate::real::{Precision, Real};

/// One benchmark run: which activations, at what precision, over how much
/// data, measured how many times.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub activations: Vec<Activation>,
    pub precision: Precision,
    /// Elements per pass.
    pub n: usize,
    /// Timed passes per activation; the median is taken across these.
    pub reps: u32,
    /// Untimed passes per activation before measurement.
    pub warmup: u32,
    /// Inputs are uniform in `[uniform_low, uniform_high)`.
    pub uniform_low: f64,
    pub uniform_high: f64,
    pub seed: u64,
    /// Run kernels with [`Exec::Parallel`]. Off by default.
    pub parallel: bool,
}

impl Default for BenchConfig {
    /// The standard comparison: all six activations, one million doubles,
    /// median of 50 passes after 5 warmups, inputs uniform in `[-5, 5)`.
    fn default() -> Self {
        BenchConfig {
            activations: vec![
                Activation::Squareplus { b: 4.0 },
                Activation::SoftplusStable,
                Activation::SoftplusNaive,
                Activation::Relu,
                Activation::Elu { alpha: 1.0 },
                Activation::Swish,
            ],
            precision: Precision::Double,
            n: 1_000_000,
            reps: 50,
            warmup: 5,
            uniform_low: -5.0,
            uniform_high: 5.0,
            seed: 42,
            parallel: false,
        }
    }
}

/// Result row for one activation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub name: String,
    pub precision: Precision,
    pub n: usize,
    pub reps: u32,
    pub median_ns_per_elem: f64,
    pub min_ns_per_elem: f64,
    /// Left-to-right sum of the final pass's output, in `f64`.
    pub checksum: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid benchmark config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Activation(#[from] ActivationError),
    #[error("could not allocate {bytes} bytes of benchmark buffers")]
    Allocation { bytes: usize },
    #[error("bad report line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Report rendering for [`format_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Aligned human-readable columns.
    Table,
    /// One header plus one line per record; cells round-trip bit-exactly.
    Csv,
    /// Pretty-printed JSON array.
    Json,
}

const CSV_HEADER: &str = "name,precision,n,reps,median_ns_per_elem,min_ns_per_elem,checksum";

/// Runs every configured activation over the shared input and returns one
/// record each, sorted by median time descending (slowest first).
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    validate(config)?;
    match config.precision {
        Precision::Single => run_typed::<f32>(config),
        Precision::Double => run_typed::<f64>(config),
    }
}

fn validate(config: &BenchConfig) -> Result<(), BenchError> {
    if config.activations.is_empty() {
        return Err(BenchError::InvalidConfig("no activations listed".into()));
    }
    for act in &config.activations {
        act.validate()?;
    }
    if config.n == 0 {
        return Err(BenchError::InvalidConfig("n must be >= 1".into()));
    }
    if config.reps == 0 {
        return Err(BenchError::InvalidConfig("reps must be >= 1".into()));
    }
    if !(config.uniform_low.is_finite() && config.uniform_high.is_finite()) {
        return Err(BenchError::InvalidConfig(
            "input range must be finite".into(),
        ));
    }
    if config.uniform_low >= config.uniform_high {
        return Err(BenchError::InvalidConfig(format!(
            "input range is empty: [{}, {})",
            config.uniform_low, config.uniform_high
        )));
    }
    Ok(())
}

fn run_typed<T: Real>(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let n = config.n;
    let bytes = 2 * n * std::mem::size_of::<T>();
    let mut input: Vec<T> = Vec::new();
    let mut output: Vec<T> = Vec::new();
    // try_reserve instead of plain push: a huge --n should fail cleanly, not
    // take down the process.
    input
        .try_reserve_exact(n)
        .and_then(|_| output.try_reserve_exact(n))
        .map_err(|_| BenchError::Allocation { bytes })?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (low, high) = (config.uniform_low, config.uniform_high);
    input.extend((0..n).map(|_| T::from_f64(rng.gen_range(low..high))));
    output.extend(std::iter::repeat(T::ZERO).take(n));

    let exec = if config.parallel {
        Exec::Parallel
    } else {
        Exec::Sequential
    };

    // One throwaway pass to sanity-check that the clock can resolve what we
    // are about to measure.
    let t0 = Instant::now();
    apply(&config.activations[0], exec, &input, &mut output).map_err(kernel_bug)?;
    let pass = t0.elapsed().as_secs_f64();
    let resolution = timer_resolution_secs();
    if resolution >= pass * 0.01 {
        eprintln!(
            "warning: timer resolution ({:.0} ns) exceeds 1% of a measurement pass ({:.0} ns); \
             increase n for usable numbers",
            resolution * 1e9,
            pass * 1e9
        );
    }

    let mut records = Vec::with_capacity(config.activations.len());
    let mut times = Vec::with_capacity(config.reps as usize);
    for act in &config.activations {
        for _ in 0..config.warmup {
            apply(act, exec, std::hint::black_box(&input), &mut output).map_err(kernel_bug)?;
            std::hint::black_box(&mut output);
        }
        times.clear();
        for _ in 0..config.reps {
            let t = Instant::now();
            apply(act, exec, std::hint::black_box(&input), &mut output).map_err(kernel_bug)?;
            std::hint::black_box(&mut output);
            times.push(t.elapsed().as_secs_f64());
        }
        times.sort_unstable_by(f64::total_cmp);
        let per_elem = 1e9 / n as f64;
        records.push(BenchRecord {
            name: act.name(),
            precision: config.precision,
            n,
            reps: config.reps,
            median_ns_per_elem: median_of_sorted(&times) * per_elem,
            min_ns_per_elem: times[0] * per_elem,
            checksum: checksum(&output).to_f64(),
        });
    }
    records.sort_by(|a, b| b.median_ns_per_elem.total_cmp(&a.median_ns_per_elem));
    Ok(records)
}

/// Config is validated before any kernel call, so later kernel errors are
/// crate bugs, not user input.
fn kernel_bug(err: crate::kernels::KernelError) -> BenchError {
    unreachable!("kernel rejected a validated benchmark config: {err}")
}

fn median_of_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Smallest positive step the monotonic clock can report.
fn timer_resolution_secs() -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..1000 {
        let t = Instant::now();
        let mut delta = t.elapsed();
        while delta.is_zero() {
            delta = t.elapsed();
        }
        let secs = delta.as_secs_f64();
        if secs < best {
            best = secs;
        }
    }
    best
}

/// Renders records in the given format. Rows are (re)sorted by median
/// descending, so the ordering holds no matter where the records came from.
pub fn format_report(records: &[BenchRecord], format: ReportFormat) -> String {
    let mut rows: Vec<&BenchRecord> = records.iter().collect();
    rows.sort_by(|a, b| b.median_ns_per_elem.total_cmp(&a.median_ns_per_elem));
    match format {
        ReportFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "{:<28} {:>9} {:>10} {:>6} {:>14} {:>14}  {}\n",
                "name", "precision", "n", "reps", "median ns/elem", "min ns/elem", "checksum"
            ));
            for r in rows {
                out.push_str(&format!(
                    "{:<28} {:>9} {:>10} {:>6} {:>14.3} {:>14.3}  {:.6e}\n",
                    r.name,
                    r.precision,
                    r.n,
                    r.reps,
                    r.median_ns_per_elem,
                    r.min_ns_per_elem,
                    r.checksum
                ));
            }
            out
        }
        ReportFormat::Csv => {
            let mut out = String::with_capacity(64 * (rows.len() + 1));
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.name,
                    r.precision,
                    r.n,
                    r.reps,
                    f64_lossless(r.median_ns_per_elem),
                    f64_lossless(r.min_ns_per_elem),
                    f64_lossless(r.checksum)
                ));
            }
            out
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("records are plain data");
            s.push('\n');
            s
        }
    }
}

/// Parses text produced by [`format_report`] with [`ReportFormat::Csv`] back
/// into records, bit-exactly.
pub fn parse_report_csv(text: &str) -> Result<Vec<BenchRecord>, BenchError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        other => {
            return Err(BenchError::Parse {
                line: 1,
                reason: format!(
                    "expected header '{CSV_HEADER}', got '{}'",
                    other.map(|(_, l)| l).unwrap_or("")
                ),
            })
        }
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 7 {
            return Err(BenchError::Parse {
                line: lineno,
                reason: format!("expected 7 cells, got {}", cells.len()),
            });
        }
        let field = |what: &str, err: String| BenchError::Parse {
            line: lineno,
            reason: format!("{what}: {err}"),
        };
        records.push(BenchRecord {
            name: cells[0].to_string(),
            precision: cells[1]
                .parse()
                .map_err(|e: String| field("precision", e))?,
            n: cells[2]
                .parse()
                .map_err(|e: std::num::ParseIntError| field("n", e.to_string()))?,
            reps: cells[3]
                .parse()
                .map_err(|e: std::num::ParseIntError| field("reps", e.to_string()))?,
            median_ns_per_elem: cells[4]
                .parse()
                .map_err(|e: std::num::ParseFloatError| field("median", e.to_string()))?,
            min_ns_per_elem: cells[5]
                .parse()
                .map_err(|e: std::num::ParseFloatError| field("min", e.to_string()))?,
            checksum: cells[6]
                .parse()
                .map_err(|e: std::num::ParseFloatError| field("checksum", e.to_string()))?,
        });
    }
    Ok(records)
}
