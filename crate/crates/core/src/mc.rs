//! Monte Carlo replay of the full prepare-measure-guess-score protocol.
//!
//! Each trial draws a true direction from the prior, simulates the chosen
//! measurement, applies the strategy's optimal guess rule, and scores the
//! spin-state overlap with the truth. The per-trial random stream is keyed
//! by `(seed, trial index)` through the ChaCha stream counter, so parallel
//! and sequential execution produce bit-identical estimates.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::{spin_overlap_sq, BlochDirection};
use crate::error::Error;
use crate::nqubit_povm::PovmContext;
use crate::prior::VmfPrior;
use crate::qubit_povm::optimal_estimator_1q;
use crate::qubit_projective::{fidelity_axis, AxisBenchmark};
use crate::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Measurement-and-guess strategy simulated by [`simulate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategySpec {
    /// Guess the prior's most probable state without measuring.
    DoNothing,
    /// Single-qubit projective measurement on the axis at polar angle
    /// `axis_theta0` in `[0, pi/2]`, with the outcome-optimal guesses.
    ProjectiveAxis { axis_theta0: f64 },
    /// Coherent-spin POVM with the Bayesian-optimal polar estimator and the
    /// measured azimuth.
    CoherentPovm,
}

/// Monte Carlo mean fidelity with its standard error; bit-exactly
/// reproducible from `(seed, parameters)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean_fidelity: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

const CHUNK: u64 = 4096;
/// Estimator lookup resolution for N > 1; cells whose tabulated guess jumps
/// by more than [`JUMP_TOL`] fall back to exact optimization.
const TABLE_SIZE: usize = 2049;
const JUMP_TOL: f64 = 0.05;

enum Guesser {
    Pole,
    Projective(AxisBenchmark),
    Closed1q {
        kappa: f64,
    },
    Table {
        ctx: PovmContext,
        theta_tilde: Vec<f64>,
    },
}

impl Guesser {
    fn povm_guess_theta(&self, theta_m: f64) -> f64 {
        match self {
            Guesser::Closed1q { kappa } => optimal_estimator_1q(*kappa, theta_m),
            Guesser::Table { ctx, theta_tilde } => {
                let step = PI / (TABLE_SIZE - 1) as f64;
                let pos = (theta_m / step).clamp(0.0, (TABLE_SIZE - 1) as f64);
                let i = (pos as usize).min(TABLE_SIZE - 2);
                let lo = theta_tilde[i];
                let hi = theta_tilde[i + 1];
                if (hi - lo).abs() > JUMP_TOL {
                    ctx.conditional(theta_m).maximize()
                } else {
                    lo + (pos - i as f64) * (hi - lo)
                }
            }
            _ => unreachable!("povm guess requested for a non-POVM strategy"),
        }
    }
}

struct TrialSetup {
    n_particles: u32,
    strategy: StrategySpec,
    prior: VmfPrior,
    guesser: Guesser,
    seed: u64,
}

impl TrialSetup {
    fn new(n_particles: u32, kappa: f64, strategy: StrategySpec, seed: u64) -> Result<Self> {
        if n_particles < 1 {
            return Err(Error::Domain("n_particles must be >= 1".into()));
        }
        let prior = VmfPrior::new(kappa)?;
        let guesser = match strategy {
            StrategySpec::DoNothing => Guesser::Pole,
            StrategySpec::ProjectiveAxis { axis_theta0 } => {
                if n_particles != 1 {
                    return Err(Error::Domain(format!(
                        "projective-axis strategy is defined for one qubit, got N = {n_particles}"
                    )));
                }
                Guesser::Projective(fidelity_axis(kappa, axis_theta0)?)
            }
            StrategySpec::CoherentPovm => {
                if n_particles == 1 {
                    Guesser::Closed1q { kappa }
                } else {
                    let ctx = PovmContext::new(n_particles, kappa)?;
                    let theta_tilde: Vec<f64> = (0..TABLE_SIZE)
                        .map(|i| {
                            let t = PI * i as f64 / (TABLE_SIZE - 1) as f64;
                            ctx.conditional(t).maximize()
                        })
                        .collect();
                    Guesser::Table { ctx, theta_tilde }
                }
            }
        };
        Ok(Self {
            n_particles,
            strategy,
            prior,
            guesser,
            seed,
        })
    }

    fn trial(&self, index: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let truth = self.prior.sample_direction(&mut rng);
        let guess = match (&self.strategy, &self.guesser) {
            (StrategySpec::DoNothing, _) => BlochDirection::north_pole(),
            (StrategySpec::ProjectiveAxis { axis_theta0 }, Guesser::Projective(bench)) => {
                let p_plus = 0.5
                    * (1.0
                        + axis_theta0.sin() * truth.theta().sin() * truth.phi().cos()
                        + axis_theta0.cos() * truth.theta().cos());
                // both guess angles are signed angles in the measurement
                // meridian plane; canonicalization folds negative angles to
                // azimuth pi
                if rng.gen::<f64>() < p_plus {
                    BlochDirection::new(bench.guess_plus, 0.0)
                } else {
                    BlochDirection::new(bench.guess_minus, 0.0)
                }
            }
            (StrategySpec::CoherentPovm, guesser) => {
                let measured = povm_sample(self.n_particles, truth, &mut rng);
                let theta_tilde = guesser.povm_guess_theta(measured.theta());
                BlochDirection::new(theta_tilde, measured.phi())
            }
            _ => unreachable!("guesser mismatched with strategy"),
        };
        spin_overlap_sq(guess, truth, self.n_particles)
    }

    /// Sum and sum of squares over a chunk, accumulated in trial order.
    fn chunk_sums(&self, chunk: u64, n_samples: u64) -> (f64, f64) {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(n_samples);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for i in start..end {
            let f = self.trial(i);
            sum += f;
            sum_sq += f * f;
        }
        (sum, sum_sq)
    }
}

/// Draws a measured direction from the coherent-spin POVM outcome density
/// centered on `true_direction`, by exact inverse-CDF sampling of the
/// angular distance and explicit 3-vector rotation into global coordinates.
pub fn povm_sample<R: Rng + ?Sized>(
    n_particles: u32,
    true_direction: BlochDirection,
    rng: &mut R,
) -> BlochDirection {
    let u: f64 = rng.gen();
    let alpha = 2.0 * u.powf(1.0 / f64::from(2 * n_particles + 2)).acos();
    let psi = rng.gen::<f64>() * 2.0 * PI;

    let (st, ct) = (true_direction.theta().sin(), true_direction.theta().cos());
    let (sp, cp) = (true_direction.phi().sin(), true_direction.phi().cos());
    let axis = true_direction.to_unit_vector();
    let e_theta = [ct * cp, ct * sp, -st];
    let e_phi = [-sp, cp, 0.0];
    let (sa, ca) = alpha.sin_cos();
    let (spsi, cpsi) = psi.sin_cos();
    let v = [
        ca * axis[0] + sa * (cpsi * e_theta[0] + spsi * e_phi[0]),
        ca * axis[1] + sa * (cpsi * e_theta[1] + spsi * e_phi[1]),
        ca * axis[2] + sa * (cpsi * e_theta[2] + spsi * e_phi[2]),
    ];
    BlochDirection::from_vector(v)
}

fn finalize(
    sums: impl IntoIterator<Item = (f64, f64)>,
    n_samples: u64,
    seed: u64,
) -> McEstimate {
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (s, q) in sums {
        sum += s;
        sum_sq += q;
    }
    let n = n_samples as f64;
    let mean = sum / n;
    let variance = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
    McEstimate {
        mean_fidelity: mean,
        std_error: (variance / n).sqrt(),
        n_samples,
        seed,
    }
}

fn check_samples(n_samples: u64) -> Result<()> {
    if n_samples < 1000 {
        return Err(Error::Domain(format!(
            "n_samples must be >= 1000, got {n_samples}"
        )));
    }
    Ok(())
}

/// Runs the protocol simulation; shards fixed-size trial chunks across
/// threads when the `parallel` feature is on. The estimate is bit-identical
/// to [`simulate_sequential`] for the same arguments.
pub fn simulate(
    n_particles: u32,
    kappa: f64,
    strategy: StrategySpec,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(n_samples)?;
    let setup = TrialSetup::new(n_particles, kappa, strategy, seed)?;
    let n_chunks = n_samples.div_ceil(CHUNK);
    #[cfg(feature = "parallel")]
    let sums: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| setup.chunk_sums(c, n_samples))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let sums: Vec<(f64, f64)> = (0..n_chunks)
        .map(|c| setup.chunk_sums(c, n_samples))
        .collect();
    Ok(finalize(sums, n_samples, seed))
}

/// Single-threaded reference implementation of [`simulate`]; kept public so
/// the benchmark suite and downstream tests can compare the two directly.
pub fn simulate_sequential(
    n_particles: u32,
    kappa: f64,
    strategy: StrategySpec,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(n_samples)?;
    let setup = TrialSetup::new(n_particles, kappa, strategy, seed)?;
    let n_chunks = n_samples.div_ceil(CHUNK);
    let sums = (0..n_chunks).map(|c| setup.chunk_sums(c, n_samples));
    Ok(finalize(sums, n_samples, seed))
}
