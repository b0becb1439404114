//! Batch verification front end.
//!
//! Subcommands mirror the library's report drivers:
//!
//! * `verify-solution` — structural invariants of one solution spec;
//! * `sweep` — determining equations for all 38 generators and conservation
//!   for all 50 currents over the solution catalogs;
//! * `bracket-table` — the verified structure-constant table, Jacobi sweep,
//!   and dimension audit;
//! * `charge` — conserved-charge time-independence over a periodic box.
//!
//! Exit codes: 0 all checks passed, 1 verification failure, 2 input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use emfield::report::{
    run_bracket_table, run_charge, run_sweep, run_verify_solution, Backend, ChargeConfig,
    Report, RunConfig,
};
use emfield::solutions::SolutionSpec;
use emfield::tensor::MetricContext;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "emfield",
    about = "Verification sweeps for the symmetries and conserved currents of \
             source-free electromagnetism in joint potential form"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Arithmetic backend: exact rationals on polynomial solutions, or f64
    /// sampling on plane waves.
    #[arg(long, value_enum, default_value_t = BackendArg::Rational, global = true)]
    backend: BackendArg,
    /// Seed of the sample-point stream (float backend).
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Sample points per residual field (float backend).
    #[arg(long, default_value_t = 100, global = true)]
    points: usize,
    /// Residual tolerance (float backend; rational runs are exact).
    #[arg(long, default_value_t = 1e-9, global = true)]
    tolerance: f64,
    /// Worker threads for parallel sweeps (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check all structural invariants of one solution spec file.
    VerifySolution {
        /// JSON solution spec.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Determining-equation and conservation sweep over the full catalogs.
    Sweep,
    /// Export the verified bracket table with Jacobi sweep and dimension
    /// audit (always exact).
    BracketTable,
    /// Charge conservation over a spatially periodic box.
    Charge {
        /// Optional plane-wave spec; defaults to the circularly polarized
        /// reference wave.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Catalog current ids to integrate.
        #[arg(long, value_delimiter = ',', default_values_t = ["duality".to_string(), "se.t0".to_string()])]
        currents: Vec<String>,
        #[arg(long, default_value_t = 0.3)]
        t1: f64,
        #[arg(long, default_value_t = 1.1)]
        t2: f64,
        /// Box as six comma-separated numbers: min1,max1,min2,max2,min3,max3.
        #[arg(long, value_delimiter = ',', num_args = 6)]
        bounds: Option<Vec<f64>>,
        /// Gauss-Legendre nodes per axis.
        #[arg(long, default_value_t = 12)]
        resolution: usize,
    },
}

fn load_spec(path: &PathBuf) -> Result<SolutionSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn emit(report: &Report, common: &Common) -> Result<(), String> {
    let body = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &common.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    if cli.common.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.jobs)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    let cfg = RunConfig {
        backend: match cli.common.backend {
            BackendArg::Rational => Backend::Rational,
            BackendArg::Float => Backend::Float,
        },
        seed: cli.common.seed,
        points: cli.common.points,
        tolerance: cli.common.tolerance,
    };
    let ctx = MetricContext::default();
    let report = match &cli.command {
        Command::VerifySolution { spec } => {
            let spec = load_spec(spec)?;
            run_verify_solution(&spec, &cfg, ctx).map_err(|e| e.to_string())?
        }
        Command::Sweep => run_sweep(&cfg, ctx),
        Command::BracketTable => run_bracket_table(&cfg),
        Command::Charge {
            spec,
            currents,
            t1,
            t2,
            bounds,
            resolution,
        } => {
            let spec = spec.as_ref().map(load_spec).transpose()?;
            let mut ccfg = ChargeConfig {
                currents: currents.clone(),
                t1: *t1,
                t2: *t2,
                resolution: *resolution,
                ..ChargeConfig::default()
            };
            if let Some(b) = bounds {
                ccfg.bounds = [(b[0], b[1]), (b[2], b[3]), (b[4], b[5])];
            }
            run_charge(spec.as_ref(), &ccfg, &cfg, ctx).map_err(|e| e.to_string())?
        }
    };
    emit(&report, &cli.common)?;
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
