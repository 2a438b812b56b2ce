//! Single-qubit entanglement-free benchmarks with projective measurement on
//! an arbitrary axis: do-nothing, equatorial-optimal, general-axis, and
//! prior-ignoring fidelities, their optimal guess angles, and the crossover
//! point where do-nothing and prior-ignoring strategies exchange dominance.

use std::f64::consts::FRAC_PI_2;

use crate::error::Error;
use crate::prior::{langevin, mean_excitation_per_qubit};
use crate::Result;

/// Optimized benchmark for projection on the axis at polar angle `theta0`.
///
/// `a_plus`/`a_minus`/`b` are the coefficients of the outcome-conditioned
/// mean fidelity; the optimal guess angles are signed angles in the
/// measurement meridian plane (`guess_minus` pairs with azimuth pi).
#[derive(Debug, Clone, Copy)]
pub struct AxisBenchmark {
    pub theta0: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b: f64,
    pub guess_plus: f64,
    pub guess_minus: f64,
    pub fidelity: f64,
}

/// Mean fidelity of guessing the prior's most probable state without
/// measuring: `(1 + coth(kappa) - 1/kappa)/2 = 1 - <n>`.
pub fn fidelity_do_nothing(kappa: f64) -> f64 {
    1.0 - mean_excitation_per_qubit(kappa)
}

/// Optimal guess polar angle `arctan(1/kappa)` after an equatorial
/// projective measurement.
pub fn optimal_guess_equatorial(kappa: f64) -> f64 {
    (1.0 / kappa).atan()
}

/// Mean fidelity for projection on an equatorial axis,
/// `[1 + (coth(kappa) - 1/kappa) sqrt(1 + 1/kappa^2)] / 2`.
///
/// This is the best projective benchmark over all axes.
pub fn fidelity_equatorial(kappa: f64) -> f64 {
    (1.0 + langevin(kappa) * (1.0 + 1.0 / (kappa * kappa)).sqrt()) / 2.0
}

/// Mean fidelity when the prior is ignored: measure along the prior axis and
/// take the outcome as the guess, `1 - (1 - 2<n>)/kappa`.
pub fn fidelity_no_prior(kappa: f64) -> f64 {
    1.0 - langevin(kappa) / kappa
}

/// Optimized mean fidelity for projection on the axis at polar angle
/// `theta0` in `[0, pi/2]` (reflection symmetry covers the rest).
///
/// The guess angles come from `tan(theta_pm) = +-b / a_pm` with the branch
/// picked by `atan2`, which keeps the maximizing solution when `a_minus`
/// changes sign beyond the cusp.
pub fn fidelity_axis(kappa: f64, theta0: f64) -> Result<AxisBenchmark> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&theta0) {
        return Err(Error::Domain(format!(
            "theta0 must lie in [0, pi/2], got {theta0}"
        )));
    }
    let l = langevin(kappa);
    let tilt = (1.0 / l - 2.0 / kappa) * theta0.cos();
    let a_plus = l / 4.0 * (1.0 + tilt);
    let a_minus = l / 4.0 * (1.0 - tilt);
    let b = l / (4.0 * kappa) * theta0.sin();
    let fidelity = 0.5 + a_plus.hypot(b) + a_minus.hypot(b);
    Ok(AxisBenchmark {
        theta0,
        a_plus,
        a_minus,
        b,
        guess_plus: b.atan2(a_plus),
        guess_minus: (-b).atan2(a_minus),
        fidelity,
    })
}

/// Solves `<n>(kappa) = 1/(kappa + 2)` for the cusp where the do-nothing and
/// prior-ignoring fidelities cross; returns `(kappa_c, n_c)`.
pub fn crossover_excitation() -> (f64, f64) {
    let f = |k: f64| mean_excitation_per_qubit(k) - 1.0 / (k + 2.0);
    let (mut lo, mut hi) = (0.5_f64, 3.0_f64);
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    let kappa_c = 0.5 * (lo + hi);
    (kappa_c, 1.0 / (kappa_c + 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn do_nothing_landmarks() {
        assert_abs_diff_eq!(fidelity_do_nothing(1e-8), 0.5, epsilon = 1e-8);
        assert_abs_diff_eq!(fidelity_do_nothing(2.0), 0.768657360363774, epsilon = 1e-12);
        let mut k = 1e-3;
        while k < 50.0 {
            assert_abs_diff_eq!(
                fidelity_do_nothing(k),
                1.0 - mean_excitation_per_qubit(k),
                epsilon = 1e-15
            );
            k *= 2.0;
        }
    }

    #[test]
    fn equatorial_guess_landmarks() {
        assert_abs_diff_eq!(optimal_guess_equatorial(1.0), FRAC_PI_4, epsilon = 1e-15);
        assert!(optimal_guess_equatorial(1e6) < 1e-5);
        assert_abs_diff_eq!(optimal_guess_equatorial(1e-9), FRAC_PI_2, epsilon = 1e-8);
    }

    #[test]
    fn equatorial_fidelity_landmarks() {
        assert_abs_diff_eq!(fidelity_equatorial(1e-8), 2.0 / 3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(fidelity_equatorial(1e8), 1.0, epsilon = 1e-7);
        assert_abs_diff_eq!(fidelity_equatorial(1.0), 0.721349373127244, epsilon = 1e-12);
    }

    #[test]
    fn no_prior_landmarks() {
        assert_abs_diff_eq!(fidelity_no_prior(1e-8), 2.0 / 3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(fidelity_no_prior(1.0), 0.686964714500669, epsilon = 1e-12);
    }

    #[test]
    fn axis_reduces_to_equatorial() {
        let mut k = 1e-3;
        while k < 50.0 {
            let bench = fidelity_axis(k, FRAC_PI_2).unwrap();
            assert_abs_diff_eq!(bench.fidelity, fidelity_equatorial(k), epsilon = 1e-12);
            k *= 1.9;
        }
    }

    #[test]
    fn axis_uniform_limit_guesses_measured_direction() {
        let theta0 = 0.9;
        let bench = fidelity_axis(1e-7, theta0).unwrap();
        assert_abs_diff_eq!(bench.guess_plus, theta0, epsilon = 1e-6);
    }

    #[test]
    fn pole_axis_is_cusp_envelope() {
        // theta0 = 0 reduces to max(do-nothing, no-prior) on both sides of
        // the crossover
        for k in [0.3, 0.7, 1.0, crossover_excitation().0, 1.8, 3.0, 10.0] {
            let bench = fidelity_axis(k, 0.0).unwrap();
            let envelope = fidelity_do_nothing(k).max(fidelity_no_prior(k));
            assert_abs_diff_eq!(bench.fidelity, envelope, epsilon = 1e-10);
        }
    }

    #[test]
    fn equatorial_axis_dominates_grid() {
        let mut k = 1e-3;
        while k < 50.0 {
            let mut prev = -1.0;
            for i in 0..33 {
                let theta0 = FRAC_PI_2 * i as f64 / 32.0;
                let f = fidelity_axis(k, theta0).unwrap().fidelity;
                assert!(
                    f >= prev - 1e-12,
                    "fidelity not non-decreasing in theta0 at kappa = {k}"
                );
                prev = f;
            }
            let top = fidelity_axis(k, FRAC_PI_2).unwrap().fidelity;
            assert_abs_diff_eq!(top, prev, epsilon = 1e-12);
            assert!(top >= fidelity_do_nothing(k) - 1e-12);
            assert!(top >= 2.0 / 3.0 - 1e-12 || k < 1e-2);
            k *= 1.9;
        }
    }

    #[test]
    fn equatorial_never_below_uniform_benchmark() {
        let mut k = 1e-3;
        while k < 50.0 {
            assert!(fidelity_equatorial(k) >= 2.0 / 3.0 - 1e-12);
            assert!(fidelity_equatorial(k) >= fidelity_do_nothing(k) - 1e-12);
            k *= 1.5;
        }
    }

    #[test]
    fn crossover_matches_both_closed_forms() {
        let (kappa_c, n_c) = crossover_excitation();
        assert!((0.29..=0.31).contains(&n_c), "n_c = {n_c}");
        assert_abs_diff_eq!(kappa_c, 1.34399967274975, epsilon = 1e-9);
        assert!((mean_excitation_per_qubit(kappa_c) - 1.0 / (kappa_c + 2.0)).abs() < 1e-10);
        assert_abs_diff_eq!(
            fidelity_do_nothing(kappa_c),
            fidelity_no_prior(kappa_c),
            epsilon = 1e-9
        );
    }

    #[test]
    fn axis_rejects_bad_inputs() {
        assert!(fidelity_axis(0.0, 0.3).is_err());
        assert!(fidelity_axis(1.0, 2.0).is_err());
        assert!(fidelity_axis(1.0, -0.1).is_err());
    }
}
