//! Implementations of the four subcommands. Each returns a [`Table`];
//! encoding and file writing happen in the crate root.

use std::f64::consts::{FRAC_PI_2, PI};

use telebench::mc::{simulate, McEstimate, StrategySpec};
use telebench::nqubit_povm::{
    asymptotic_fidelity, estimator_curve, fidelity_do_nothing_nq, mean_fidelity_nq,
};
use telebench::prior::{kappa_from_mean_n, mean_excitation_per_qubit};
use telebench::qubit_povm::optimal_estimator_1q;
use telebench::qubit_projective::{fidelity_axis, fidelity_do_nothing, fidelity_no_prior};

use crate::emit::{Cell, Table};
use crate::grid::{parse_grid, parse_scalar};
use crate::{CommonArgs, Failure};

enum ParticleArg {
    Finite(u32),
    Infinite,
}

fn parse_n(args: &CommonArgs) -> Result<ParticleArg, Failure> {
    let raw = args
        .n
        .as_deref()
        .ok_or_else(|| Failure::Usage("--n is required".into()))?;
    if raw == "inf" {
        return Ok(ParticleArg::Infinite);
    }
    let n: u32 = raw
        .parse()
        .map_err(|_| Failure::Usage(format!("--n must be a positive integer or 'inf', got '{raw}'")))?;
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(ParticleArg::Finite(n))
}

/// Resolves the parameter axis into `(kappa, total mean_n)` pairs; exactly
/// one of the two grid flags must be present.
fn axis_points(args: &CommonArgs, n_particles: u32) -> Result<Vec<(f64, f64)>, Failure> {
    match (&args.kappa_grid, &args.mean_n_grid) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--kappa-grid and --mean-n-grid are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "one of --kappa-grid or --mean-n-grid is required".into(),
        )),
        (Some(spec), None) => parse_grid(spec)
            .map_err(Failure::Usage)?
            .into_iter()
            .map(|kappa| {
                if kappa <= 0.0 {
                    return Err(Failure::Usage(format!(
                        "kappa values must be positive, got {kappa}"
                    )));
                }
                let mean_n = f64::from(n_particles) * mean_excitation_per_qubit(kappa);
                Ok((kappa, mean_n))
            })
            .collect(),
        (None, Some(spec)) => parse_grid(spec)
            .map_err(Failure::Usage)?
            .into_iter()
            .map(|mean_n| {
                let kappa = kappa_from_mean_n(mean_n, n_particles)?;
                Ok((kappa, mean_n))
            })
            .collect(),
    }
}

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

pub fn run_bench(args: &CommonArgs) -> Result<Table, Failure> {
    let mut table = Table::new(&[
        "n_particles",
        "kappa",
        "mean_n",
        "strategy",
        "theta0",
        "fidelity",
    ]);
    match parse_n(args)? {
        ParticleArg::Infinite => {
            if args.kappa_grid.is_some() {
                return Err(Failure::Usage(
                    "--n inf takes --mean-n-grid (kappa is undefined in the limit)".into(),
                ));
            }
            let spec = args.mean_n_grid.as_deref().ok_or_else(|| {
                Failure::Usage("--n inf requires --mean-n-grid".into())
            })?;
            for mean_n in parse_grid(spec).map_err(Failure::Usage)? {
                if mean_n <= 0.0 {
                    return Err(Failure::Usage(format!(
                        "mean-n values must be positive, got {mean_n}"
                    )));
                }
                table.push(vec![
                    text("inf"),
                    Cell::Empty,
                    Cell::Number(mean_n),
                    text("asymptotic"),
                    Cell::Empty,
                    Cell::Number(asymptotic_fidelity(mean_n)),
                ]);
            }
        }
        ParticleArg::Finite(n) => {
            let strategy = args.strategy.as_deref().unwrap_or("povm");
            let points = axis_points(args, n)?;
            match strategy {
                "projective" => {
                    if n != 1 {
                        return Err(Failure::Usage(
                            "the projective strategy is defined for --n 1".into(),
                        ));
                    }
                    let theta0_values = match (&args.theta0_grid, &args.theta0) {
                        (Some(_), Some(_)) => {
                            return Err(Failure::Usage(
                                "--theta0 and --theta0-grid are mutually exclusive".into(),
                            ))
                        }
                        (Some(spec), None) => parse_grid(spec).map_err(Failure::Usage)?,
                        (None, Some(tok)) => vec![parse_scalar(tok).map_err(Failure::Usage)?],
                        (None, None) => vec![FRAC_PI_2],
                    };
                    for &theta0 in &theta0_values {
                        for &(kappa, mean_n) in &points {
                            let bench = fidelity_axis(kappa, theta0)?;
                            table.push(vec![
                                text("1"),
                                Cell::Number(kappa),
                                Cell::Number(mean_n),
                                text("projective"),
                                Cell::Number(theta0),
                                Cell::Number(bench.fidelity),
                            ]);
                        }
                    }
                }
                "do-nothing" | "povm" => {
                    if args.theta0.is_some() || args.theta0_grid.is_some() {
                        return Err(Failure::Usage(
                            "--theta0 only applies to the projective strategy".into(),
                        ));
                    }
                    for &(kappa, mean_n) in &points {
                        let fidelity = match strategy {
                            "do-nothing" => fidelity_do_nothing_nq(n, kappa)?,
                            _ => mean_fidelity_nq(n, kappa)?,
                        };
                        table.push(vec![
                            text(n.to_string()),
                            Cell::Number(kappa),
                            Cell::Number(mean_n),
                            text(strategy),
                            Cell::Empty,
                            Cell::Number(fidelity),
                        ]);
                    }
                }
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown strategy '{other}' (expected do-nothing, projective, or povm)"
                    )))
                }
            }
        }
    }
    Ok(table)
}

pub fn run_estimator(args: &CommonArgs) -> Result<Table, Failure> {
    let n = match parse_n(args)? {
        ParticleArg::Finite(n) => n,
        ParticleArg::Infinite => {
            return Err(Failure::Usage(
                "estimator curves need a finite --n".into(),
            ))
        }
    };
    let grid_size = args.grid_size.unwrap_or(129);
    let mut table = Table::new(&[
        "n_particles",
        "kappa",
        "mean_n",
        "theta_m",
        "theta_tilde",
        "small_angle_gain",
    ]);
    for (kappa, mean_n) in axis_points(args, n)? {
        let curve = estimator_curve(n, kappa, grid_size)?;
        for &(theta_m, theta_tilde) in &curve.samples {
            table.push(vec![
                text(n.to_string()),
                Cell::Number(kappa),
                Cell::Number(mean_n),
                Cell::Number(theta_m),
                Cell::Number(theta_tilde),
                Cell::Number(curve.small_angle_gain),
            ]);
        }
    }
    Ok(table)
}

/// One (N, kappa, strategy) comparison between an analytic benchmark and the
/// Monte Carlo oracle.
pub struct ValidationCell {
    pub n_particles: u32,
    pub kappa: f64,
    pub strategy: String,
    pub analytic: f64,
    pub estimate: McEstimate,
}

const DEFAULT_N: [u32; 5] = [1, 2, 3, 5, 10];
const DEFAULT_KAPPA: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

pub fn validation_cells(args: &CommonArgs) -> Result<Vec<ValidationCell>, Failure> {
    if args.mean_n_grid.is_some() {
        return Err(Failure::Usage(
            "validate is parameterized by kappa; use --kappa-grid".into(),
        ));
    }
    let n_values: Vec<u32> = match &args.n {
        None => DEFAULT_N.to_vec(),
        Some(_) => match parse_n(args)? {
            ParticleArg::Finite(n) => vec![n],
            ParticleArg::Infinite => {
                return Err(Failure::Usage(
                    "validate needs a finite --n (the limit has no protocol to replay)".into(),
                ))
            }
        },
    };
    let kappa_values: Vec<f64> = match &args.kappa_grid {
        Some(spec) => parse_grid(spec).map_err(Failure::Usage)?,
        None => DEFAULT_KAPPA.to_vec(),
    };
    let strategy_filter = args.strategy.as_deref();
    if let Some(s) = strategy_filter {
        if !["do-nothing", "projective", "povm"].contains(&s) {
            return Err(Failure::Usage(format!("unknown strategy '{s}'")));
        }
    }
    let theta0 = match &args.theta0 {
        Some(tok) => parse_scalar(tok).map_err(Failure::Usage)?,
        None => FRAC_PI_2,
    };
    let samples = args.samples.unwrap_or(1_000_000);
    let seed = args.seed.unwrap_or(42);

    let mut cells = Vec::new();
    for &n in &n_values {
        for &kappa in &kappa_values {
            let mut plan: Vec<(&str, StrategySpec, f64)> = Vec::new();
            if strategy_filter.is_none_or(|s| s == "do-nothing") {
                plan.push((
                    "do-nothing",
                    StrategySpec::DoNothing,
                    fidelity_do_nothing_nq(n, kappa)?,
                ));
            }
            if n == 1 && strategy_filter.is_none_or(|s| s == "projective") {
                plan.push((
                    "projective",
                    StrategySpec::ProjectiveAxis { axis_theta0: theta0 },
                    fidelity_axis(kappa, theta0)?.fidelity,
                ));
            }
            if strategy_filter.is_none_or(|s| s == "povm") {
                plan.push(("povm", StrategySpec::CoherentPovm, mean_fidelity_nq(n, kappa)?));
            }
            for (label, spec, analytic) in plan {
                let cell_seed = seed.wrapping_add(cells.len() as u64);
                let estimate = simulate(n, kappa, spec, samples, cell_seed)?;
                cells.push(ValidationCell {
                    n_particles: n,
                    kappa,
                    strategy: label.to_string(),
                    analytic,
                    estimate,
                });
            }
        }
    }
    Ok(cells)
}

/// Scores cells against the |z| <= 3 gate; split from cell generation so
/// tests can corrupt an analytic value and watch the gate trip.
pub fn render_validation(cells: &[ValidationCell]) -> (Table, bool) {
    let mut table = Table::new(&[
        "n_particles",
        "kappa",
        "strategy",
        "analytic",
        "mc_mean",
        "mc_std_error",
        "z_score",
        "status",
    ]);
    let mut all_pass = true;
    for cell in cells {
        let z = (cell.estimate.mean_fidelity - cell.analytic) / cell.estimate.std_error;
        let pass = z.abs() <= 3.0;
        all_pass &= pass;
        table.push(vec![
            text(cell.n_particles.to_string()),
            Cell::Number(cell.kappa),
            text(cell.strategy.clone()),
            Cell::Number(cell.analytic),
            Cell::Number(cell.estimate.mean_fidelity),
            Cell::Number(cell.estimate.std_error),
            Cell::Number(z),
            text(if pass { "PASS" } else { "FAIL" }),
        ]);
    }
    (table, all_pass)
}

pub fn run_validate(args: &CommonArgs) -> Result<(Table, bool), Failure> {
    let cells = validation_cells(args)?;
    Ok(render_validation(&cells))
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}

const SIXTEENTHS: [&str; 9] = [
    "0", "pi/16", "pi/8", "3pi/16", "pi/4", "5pi/16", "3pi/8", "7pi/16", "pi/2",
];

pub fn run_figure(args: &CommonArgs) -> Result<Table, Failure> {
    let id = args
        .figure
        .as_deref()
        .ok_or_else(|| Failure::Usage("--figure is required".into()))?;
    match id {
        "fig1" => figure1(),
        "fig2" => figure2(),
        "fig3" => figure3(),
        "fig4" => figure4(),
        "figB1" => figure_b1(),
        other => Err(Failure::Usage(format!(
            "unknown figure '{other}' (expected fig1, fig2, fig3, fig4, or figB1)"
        ))),
    }
}

/// Single-qubit projective benchmark on axes theta0 = 0 .. pi/2 in steps of
/// pi/16, with do-nothing and prior-ignoring reference curves.
fn figure1() -> Result<Table, Failure> {
    let mut table = Table::new(&["curve", "mean_n", "fidelity"]);
    let mean_n_grid = linspace(0.01, 0.49, 49);
    for (k, label) in SIXTEENTHS.iter().enumerate() {
        let theta0 = PI * k as f64 / 16.0;
        for &mean_n in &mean_n_grid {
            let kappa = kappa_from_mean_n(mean_n, 1)?;
            table.push(vec![
                text(format!("theta0={label}")),
                Cell::Number(mean_n),
                Cell::Number(fidelity_axis(kappa, theta0)?.fidelity),
            ]);
        }
    }
    for &mean_n in &mean_n_grid {
        let kappa = kappa_from_mean_n(mean_n, 1)?;
        table.push(vec![
            text("do-nothing"),
            Cell::Number(mean_n),
            Cell::Number(fidelity_do_nothing(kappa)),
        ]);
    }
    for &mean_n in &mean_n_grid {
        let kappa = kappa_from_mean_n(mean_n, 1)?;
        table.push(vec![
            text("no-prior"),
            Cell::Number(mean_n),
            Cell::Number(fidelity_no_prior(kappa)),
        ]);
    }
    Ok(table)
}

/// Single-qubit optimal guess angle vs detected angle for several prior
/// widths, bracketing the monotone/non-monotone transition.
fn figure2() -> Result<Table, Failure> {
    let mut table = Table::new(&["curve", "theta_m", "theta_tilde"]);
    for mean_n in [0.1, 0.2, 0.299, 0.37, 0.45] {
        let kappa = kappa_from_mean_n(mean_n, 1)?;
        for theta_m in linspace(0.0, PI, 129) {
            table.push(vec![
                text(format!("mean-n={mean_n}")),
                Cell::Number(theta_m),
                Cell::Number(optimal_estimator_1q(kappa, theta_m)),
            ]);
        }
    }
    Ok(table)
}

/// Single-qubit POVM vs equatorial projective benchmark, with the
/// difference column for the inset and the reference lines.
fn figure3() -> Result<Table, Failure> {
    let mut table = Table::new(&[
        "mean_n",
        "kappa",
        "povm",
        "projective",
        "do_nothing",
        "uniform",
        "difference",
    ]);
    for mean_n in linspace(0.01, 0.49, 97) {
        let kappa = kappa_from_mean_n(mean_n, 1)?;
        let povm = mean_fidelity_nq(1, kappa)?;
        let projective = fidelity_axis(kappa, FRAC_PI_2)?.fidelity;
        table.push(vec![
            Cell::Number(mean_n),
            Cell::Number(kappa),
            Cell::Number(povm),
            Cell::Number(projective),
            Cell::Number(fidelity_do_nothing(kappa)),
            Cell::Number(2.0 / 3.0),
            Cell::Number(projective - povm),
        ]);
    }
    Ok(table)
}

/// Maximum POVM benchmark fidelity vs total mean excitation for N = 1, 2,
/// 3, 4, 5, 10, and the oscillator limit.
fn figure4() -> Result<Table, Failure> {
    let mut table = Table::new(&["curve", "mean_n", "fidelity"]);
    for n in [1u32, 2, 3, 4, 5, 10] {
        for f in linspace(0.02, 0.98, 49) {
            let mean_n = f * f64::from(n) / 2.0;
            let kappa = kappa_from_mean_n(mean_n, n)?;
            table.push(vec![
                text(format!("N={n}")),
                Cell::Number(mean_n),
                Cell::Number(mean_fidelity_nq(n, kappa)?),
            ]);
        }
    }
    for mean_n in linspace(0.02, 5.0, 50) {
        table.push(vec![
            text("N=inf"),
            Cell::Number(mean_n),
            Cell::Number(asymptotic_fidelity(mean_n)),
        ]);
    }
    Ok(table)
}

/// Optimal guess angle vs detected angle for N = 2, 3, 5, 10 at three
/// relative prior widths each.
fn figure_b1() -> Result<Table, Failure> {
    let mut table = Table::new(&["curve", "theta_m", "theta_tilde"]);
    for n in [2u32, 3, 5, 10] {
        for f in [0.2, 0.5, 0.9] {
            let mean_n = f * f64::from(n) / 2.0;
            let kappa = kappa_from_mean_n(mean_n, n)?;
            let curve = estimator_curve(n, kappa, 65)?;
            for &(theta_m, theta_tilde) in &curve.samples {
                table.push(vec![
                    text(format!("N={n} mean-n={mean_n:.2}")),
                    Cell::Number(theta_m),
                    Cell::Number(theta_tilde),
                ]);
            }
        }
    }
    Ok(table)
}
