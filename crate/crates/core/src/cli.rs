//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 trace
//! validation failure, 3 I/O error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::experiment::{run_plan, ExperimentPlan};
use crate::mobility::{
    generate_trace, read_trace, validate_trace, write_trace, MobilityModel, MobilityScenario,
    Region,
};
use crate::report::write_reports;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable naming the default output directory of `run`.
pub const OUT_DIR_ENV: &str = "MANET_SIM_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "manet-sim", version, about = "MANET mobility, routing and CDS simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a mobility trace CSV and its JSON sidecar.
    GenTrace(GenTraceArgs),
    /// Run an experiment plan and write results and plot data.
    Run(RunArgs),
    /// Check a trace file against the mobility invariants.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct GenTraceArgs {
    /// rwp, city or manhattan
    #[arg(long)]
    model: MobilityModel,
    #[arg(long)]
    nodes: usize,
    /// m/s
    #[arg(long)]
    velocity: f64,
    /// Seconds.
    #[arg(long, default_value_t = 1000.0)]
    duration: f64,
    /// Seconds between snapshots.
    #[arg(long, default_value_t = 0.25)]
    interval: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Seconds.
    #[arg(long, default_value_t = 0.0)]
    pause: f64,
    #[arg(long, default_value_t = 1000.0)]
    width: f64,
    #[arg(long, default_value_t = 1000.0)]
    height: f64,
    /// Street spacing for the grid models.
    #[arg(long, default_value_t = 100.0)]
    block: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON plan; omitted fields take their defaults.
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Restrict the grid, e.g. `model=rwp,density=50,velocity=2.5`.
    #[arg(long)]
    only: Option<String>,
    #[arg(long, env = OUT_DIR_ENV, default_value = "results")]
    out_dir: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    traces: Option<usize>,
    #[arg(long)]
    sessions: Option<usize>,
    /// Seconds.
    #[arg(long)]
    duration: Option<f64>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    trace: PathBuf,
    /// Sidecar JSON; defaults to the trace path with a `.json` extension.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::GenTrace(a) => gen_trace(a),
        Command::Run(a) => run_experiment(a),
        Command::Validate(a) => validate(a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            eprintln!("{msg}");
            EXIT_INVALID
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_IO,
        Error::TraceFormat { .. } => EXIT_INVALID,
        _ => EXIT_USAGE,
    }
}

enum Failure {
    Invalid(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn gen_trace(a: GenTraceArgs) -> Result<(), Failure> {
    let scenario = MobilityScenario {
        model: a.model,
        node_count: a.nodes,
        velocity: a.velocity,
        pause_time: a.pause,
        duration: a.duration,
        sample_interval: a.interval,
        seed: a.seed,
    };
    let region = Region {
        width: a.width,
        height: a.height,
        block_length: a.block,
    };
    let trace = generate_trace(&scenario, &region)?;
    if let Some(parent) = a.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let sidecar = write_trace(&trace, &a.out)?;
    println!(
        "wrote {} ({} snapshots x {} nodes) and {}",
        a.out.display(),
        trace.len(),
        scenario.node_count,
        sidecar.display()
    );
    Ok(())
}

fn load_plan(path: &Path) -> Result<ExperimentPlan, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Narrows the plan's grid to the listed values.
fn apply_only(plan: &mut ExperimentPlan, filter: &str) -> Result<(), Error> {
    for part in filter.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::config("only", format!("expected key=value, got `{part}`")))?;
        let bad = |what: &str| Error::config("only", format!("invalid {what} `{value}`"));
        match key.trim() {
            "model" => plan.models = vec![value.parse().map_err(|_| bad("model"))?],
            "density" => plan.densities = vec![value.parse().map_err(|_| bad("density"))?],
            "velocity" => plan.velocities = vec![value.parse().map_err(|_| bad("velocity"))?],
            other => {
                return Err(Error::config(
                    "only",
                    format!("unknown key `{other}` (expected model, density or velocity)"),
                ))
            }
        }
    }
    Ok(())
}

fn run_experiment(a: RunArgs) -> Result<(), Failure> {
    let mut plan = match &a.plan {
        Some(path) => load_plan(path)?,
        None => ExperimentPlan::default(),
    };
    if let Some(filter) = &a.only {
        apply_only(&mut plan, filter)?;
    }
    if let Some(seed) = a.seed {
        plan.base_seed = seed;
    }
    if let Some(t) = a.traces {
        plan.traces_per_cell = t;
    }
    if let Some(s) = a.sessions {
        plan.sessions_per_trace = s;
    }
    if let Some(d) = a.duration {
        plan.duration = d;
    }
    plan.validate()?;
    let cells = run_plan(&plan)?;
    let written = write_reports(&a.out_dir, &cells)?;
    println!(
        "{} cells, {} files written to {}",
        cells.len(),
        written.len(),
        a.out_dir.display()
    );
    Ok(())
}

fn validate(a: ValidateArgs) -> Result<(), Failure> {
    let trace = read_trace(&a.trace, a.scenario.as_deref())?;
    match validate_trace(&trace) {
        Ok(()) => {
            println!(
                "{}: ok ({} snapshots x {} nodes)",
                a.trace.display(),
                trace.len(),
                trace.scenario.node_count
            );
            Ok(())
        }
        Err(v) => Err(Failure::Invalid(format!(
            "{}: invalid: {v} (file snapshot index {})",
            a.trace.display(),
            v.snapshot - 1
        ))),
    }
}
