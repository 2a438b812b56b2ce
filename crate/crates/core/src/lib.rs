//! Entanglement-free (LOCC) teleportation fidelity benchmarks for qubits and
//! N-qubit spin coherent states drawn from a von Mises-Fisher prior.
//!
//! The crate computes the maximum mean fidelity achievable without shared
//! entanglement for three measurement strategies (do-nothing, projective
//! measurement on a chosen axis, coherent-spin POVM), the Bayesian-optimal
//! guess angles behind them, and validates every analytic expression against
//! an independent Monte Carlo replay of the prepare-measure-guess-score
//! protocol ([`mc`]).
//!
//! With the default `parallel` feature, Monte Carlo runs and curve sweeps
//! shard across threads via rayon; output is bit-identical to the sequential
//! fallback.

pub mod bloch;
mod dd;
pub mod error;
pub mod mc;
pub mod nqubit_povm;
mod opt;
pub mod prior;
pub mod quad;
pub mod qubit_povm;
pub mod qubit_projective;

pub use bloch::BlochDirection;
pub use error::Error;
pub use mc::{McEstimate, StrategySpec};
pub use nqubit_povm::{EstimatorCurve, FidelityCurve, ParticleCount};
pub use prior::VmfPrior;
pub use qubit_povm::PovmClosedForm;
pub use qubit_projective::AxisBenchmark;

pub type Result<T> = std::result::Result<T, Error>;
