//! Command-line front end for the teleportation benchmark library:
//! benchmark curves, estimator curves, Monte Carlo validation reports, and
//! figure-ready curve families, emitted as long-format CSV or JSON.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

pub mod commands;
pub mod emit;
pub mod grid;

use emit::Table;

#[derive(Parser)]
#[command(
    name = "telebench",
    about = "Entanglement-free teleportation fidelity benchmarks",
    version
)]
pub struct Cli {
    /// JSON config file supplying defaults for any flag; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Mean-fidelity benchmark curve for one strategy
    Bench(CommonArgs),
    /// Optimal guess angle as a function of the detected angle
    Estimator(CommonArgs),
    /// Monte Carlo cross-check of every analytic benchmark
    Validate(CommonArgs),
    /// Curve families reproducing the reference figures
    Figure(CommonArgs),
}

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CommonArgs {
    /// Qubit count: a positive integer or "inf"
    #[arg(long)]
    pub n: Option<String>,
    /// do-nothing | projective | povm
    #[arg(long)]
    pub strategy: Option<String>,
    /// Measurement axis polar angle (projective only); accepts pi fractions
    #[arg(long)]
    pub theta0: Option<String>,
    /// Inclusive axis-angle grid start:stop:count
    #[arg(long)]
    pub theta0_grid: Option<String>,
    /// Inclusive concentration grid start:stop:count
    #[arg(long)]
    pub kappa_grid: Option<String>,
    /// Inclusive mean-excitation grid start:stop:count
    #[arg(long)]
    pub mean_n_grid: Option<String>,
    /// Number of detected-angle samples per estimator curve
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// Monte Carlo trials per validation cell
    #[arg(long)]
    pub samples: Option<u64>,
    /// Base seed for the Monte Carlo streams
    #[arg(long)]
    pub seed: Option<u64>,
    /// fig1 | fig2 | fig3 | fig4 | figB1
    #[arg(long)]
    pub figure: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv | json
    #[arg(long)]
    pub format: Option<String>,
}

impl CommonArgs {
    /// Fills unset fields from a config file's values.
    fn merged_over(self, base: CommonArgs) -> CommonArgs {
        CommonArgs {
            n: self.n.or(base.n),
            strategy: self.strategy.or(base.strategy),
            theta0: self.theta0.or(base.theta0),
            theta0_grid: self.theta0_grid.or(base.theta0_grid),
            kappa_grid: self.kappa_grid.or(base.kappa_grid),
            mean_n_grid: self.mean_n_grid.or(base.mean_n_grid),
            grid_size: self.grid_size.or(base.grid_size),
            samples: self.samples.or(base.samples),
            seed: self.seed.or(base.seed),
            figure: self.figure.or(base.figure),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }
}

/// Failure classes mapped onto process exit codes 1, 2, and 3.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Validation,
    Numeric(String),
}

impl From<telebench::Error> for Failure {
    fn from(e: telebench::Error) -> Self {
        match e {
            telebench::Error::Domain(m) => Failure::Usage(m),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation) => {
            eprintln!("validation failed: at least one cell exceeded |z| = 3");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_config(path: &PathBuf) -> Result<CommonArgs, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let base = match &cli.config {
        Some(path) => load_config(path)?,
        None => CommonArgs::default(),
    };
    let (args, result) = match cli.command {
        Command::Bench(a) => {
            let a = a.merged_over(base);
            let t = commands::run_bench(&a)?;
            (a, Ok(t))
        }
        Command::Estimator(a) => {
            let a = a.merged_over(base);
            let t = commands::run_estimator(&a)?;
            (a, Ok(t))
        }
        Command::Validate(a) => {
            let a = a.merged_over(base);
            let (t, all_pass) = commands::run_validate(&a)?;
            (a, if all_pass { Ok(t) } else { Err(t) })
        }
        Command::Figure(a) => {
            let a = a.merged_over(base);
            let t = commands::run_figure(&a)?;
            (a, Ok(t))
        }
    };
    // a failed validation still writes its report before exiting nonzero
    let (table, verdict) = match result {
        Ok(t) => (t, Ok(())),
        Err(t) => (t, Err(Failure::Validation)),
    };
    write_table(&args, &table)?;
    verdict
}

fn write_table(args: &CommonArgs, table: &Table) -> Result<(), Failure> {
    let format = args.format.as_deref().unwrap_or("csv");
    let text = match format {
        "csv" => table.to_csv(),
        "json" => table.to_json(),
        other => return Err(Failure::Usage(format!("unknown format '{other}'"))),
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Numeric(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
