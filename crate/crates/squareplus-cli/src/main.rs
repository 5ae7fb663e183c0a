//! `squareplus` — evaluate, benchmark, and verify the squareplus crate.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
//! resource error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use squareplus::activations::{squareplus_d1, squareplus_d2, Activation, B_SOFTPLUS_MATCH, B_UNIT};
use squareplus::bench::{format_report, run_bench, BenchConfig, BenchError, ReportFormat};
use squareplus::real::Precision;
use squareplus::verify::{
    check_bound_vs_softplus, check_names, run_check, GridSpec, VerifyError, VerifyReport,
};

mod figures;

#[derive(Parser)]
#[command(
    name = "squareplus",
    version,
    about = "Rectifier numerics around squareplus(x, b) = (x + sqrt(x^2 + b))/2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an activation (and derivatives where available) at points
    Eval(EvalArgs),
    /// Time the batch kernels over the standard activation set
    Bench(BenchArgs),
    /// Write plotting data: fig1.csv (curves), fig2.csv (distance to relu)
    Figures(FiguresArgs),
    /// Run verification checks ("all" or a list of check names)
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActKind {
    Squareplus,
    #[value(alias = "softplus_stable")]
    SoftplusStable,
    #[value(alias = "softplus_naive")]
    SoftplusNaive,
    Relu,
    Elu,
    Swish,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Single,
    Double,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Precision {
        match p {
            PrecisionArg::Single => Precision::Single,
            PrecisionArg::Double => Precision::Double,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingArg {
    Linear,
    #[value(alias = "log_symmetric")]
    LogSymmetric,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    /// Activation to evaluate
    #[arg(long, value_enum, default_value_t = ActKind::Squareplus)]
    activation: ActKind,
    /// Squareplus hyperparameter (squareplus only; default 4)
    #[arg(long)]
    b: Option<f64>,
    /// Elu negative-branch scale (elu only; default 1)
    #[arg(long)]
    alpha: Option<f64>,
    /// Points to evaluate at
    #[arg(required = true)]
    x: Vec<f64>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BenchArgs {
    /// Elements per pass
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    /// Timed passes per activation (median across them)
    #[arg(long, default_value_t = 50)]
    reps: u32,
    /// Untimed passes before measuring
    #[arg(long, default_value_t = 5)]
    warmup: u32,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// RNG seed for the shared input buffer
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Use the parallel kernel path (off: sequential, the honest default)
    #[arg(long)]
    parallel: bool,
    /// Input range lower bound (inclusive)
    #[arg(long, default_value_t = -5.0)]
    low: f64,
    /// Input range upper bound (exclusive)
    #[arg(long, default_value_t = 5.0)]
    high: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FiguresArgs {
    #[arg(long, default_value_t = -20.0)]
    start: f64,
    #[arg(long, default_value_t = 20.0)]
    stop: f64,
    /// Grid points (even for log-symmetric spacing)
    #[arg(long, default_value_t = 2001)]
    count: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Linear)]
    spacing: SpacingArg,
    /// Squareplus b per column set; repeat for several curves
    /// (default: the softplus-matching b and 4)
    #[arg(long = "b")]
    b: Vec<f64>,
    /// Directory the CSV files are written into
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// "all" or check names (see --help for the list)
    #[arg(required = true)]
    checks: Vec<String>,
    /// Override the squareplus b of the bound check (bound must be selected)
    #[arg(long)]
    b: Option<f64>,
}

/// Failures that map onto the nonzero exit codes (verification failures are
/// not errors; they come back as `Ok(false)` from the subcommand).
enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<BenchError> for CliError {
    fn from(err: BenchError) -> Self {
        match err {
            BenchError::Allocation { .. } => CliError::Io(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(err: VerifyError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Eval(args) => cmd_eval(args).map(|_| true),
        Command::Bench(args) => cmd_bench(args).map(|_| true),
        Command::Figures(args) => cmd_figures(args).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    if args.b.is_some() && args.activation != ActKind::Squareplus {
        return Err(CliError::Usage(
            "--b applies to --activation squareplus only".into(),
        ));
    }
    if args.alpha.is_some() && args.activation != ActKind::Elu {
        return Err(CliError::Usage(
            "--alpha applies to --activation elu only".into(),
        ));
    }
    if let Some(bad) = args.x.iter().find(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!("x must be finite, got {bad}")));
    }

    let act = match args.activation {
        ActKind::Squareplus => Activation::squareplus(args.b.unwrap_or(B_UNIT))
            .map_err(|e| CliError::Usage(e.to_string()))?,
        ActKind::SoftplusStable => Activation::SoftplusStable,
        ActKind::SoftplusNaive => Activation::SoftplusNaive,
        ActKind::Relu => Activation::Relu,
        ActKind::Elu => Activation::elu(args.alpha.unwrap_or(1.0))
            .map_err(|e| CliError::Usage(e.to_string()))?,
        ActKind::Swish => Activation::Swish,
    };

    println!("x,value,d1,d2");
    for &x in &args.x {
        let value = act.eval(x);
        match act {
            Activation::Squareplus { b } => {
                println!(
                    "{x},{value},{},{}",
                    squareplus_d1(x, b),
                    squareplus_d2(x, b)
                );
            }
            _ => println!("{x},{value},,"),
        }
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let config = BenchConfig {
        precision: args.precision.into(),
        n: args.n,
        reps: args.reps,
        warmup: args.warmup,
        uniform_low: args.low,
        uniform_high: args.high,
        seed: args.seed,
        parallel: args.parallel,
        ..BenchConfig::default()
    };
    let records = run_bench(&config)?;
    let format = match args.format {
        FormatArg::Table => ReportFormat::Table,
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Json => ReportFormat::Json,
    };
    print!("{}", format_report(&records, format));
    Ok(())
}

fn cmd_figures(args: FiguresArgs) -> Result<(), CliError> {
    let grid = match args.spacing {
        SpacingArg::Linear => GridSpec::linear(args.start, args.stop, args.count),
        SpacingArg::LogSymmetric => GridSpec::log_symmetric(args.start, args.stop, args.count),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let bs = if args.b.is_empty() {
        vec![B_SOFTPLUS_MATCH, B_UNIT]
    } else {
        args.b
    };
    for &b in &bs {
        Activation::squareplus(b).map_err(|e| CliError::Usage(e.to_string()))?;
    }

    let written = figures::write_figures(&grid, &bs, &args.out)?;
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, CliError> {
    let all = check_names();
    let selected: Vec<String> = if args.checks.len() == 1 && args.checks[0] == "all" {
        all.iter().map(|s| s.to_string()).collect()
    } else {
        args.checks.clone()
    };

    if args.b.is_some() && !selected.iter().any(|c| c == "bound") {
        return Err(CliError::Usage(
            "--b overrides the bound check, but bound is not selected".into(),
        ));
    }

    // Validate every name up front so a typo cannot abort a half-finished run.
    for name in &selected {
        if !all.contains(&name.as_str()) {
            return Err(VerifyError::UnknownCheck(name.clone()).into());
        }
    }

    let mut all_passed = true;
    for name in &selected {
        let reports: Vec<VerifyReport> = if name == "bound" {
            match args.b {
                Some(b) => {
                    if !(b.is_finite() && b >= 0.0) {
                        return Err(CliError::Usage(format!(
                            "bound check requires finite b >= 0, got {b}"
                        )));
                    }
                    vec![check_bound_vs_softplus(
                        b,
                        &GridSpec::default_verification(),
                    )]
                }
                None => run_check(name)?,
            }
        } else {
            run_check(name)?
        };
        for report in reports {
            println!("{report}");
            all_passed &= report.passed;
        }
    }
    Ok(all_passed)
}
