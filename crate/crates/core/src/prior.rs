//! The von Mises-Fisher prior on the Bloch sphere: density, normalization,
//! mean excitation number, kappa <-> <n> inversion, and exact sampling.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::bloch::BlochDirection;
use crate::error::Error;
use crate::Result;

/// `coth(kappa) - 1/kappa`, the prior mean of `cos(theta)`.
///
/// This combination equals `1 - 2<n>` per qubit and appears in every
/// downstream fidelity formula. Direct evaluation loses all significant
/// digits as `kappa -> 0`, so small arguments switch to the Taylor series
/// `kappa/3 - kappa^3/45 + 2 kappa^5/945`.
pub fn langevin(kappa: f64) -> f64 {
    debug_assert!(kappa > 0.0);
    if kappa < 1e-2 {
        let k2 = kappa * kappa;
        kappa / 3.0 * (1.0 - k2 / 15.0 * (1.0 - 2.0 * k2 / 21.0))
    } else if kappa > 19.0 {
        // coth(kappa) - 1 < 3e-17 here
        1.0 - 1.0 / kappa
    } else {
        1.0 / kappa.tanh() - 1.0 / kappa
    }
}

/// Prior-averaged occupation per qubit, `(1 - coth(kappa) + 1/kappa)/2`.
///
/// Strictly decreasing in `kappa`, from 1/2 at the uniform limit down to 0
/// for a sharp prior. The N-qubit total is N times this value.
pub fn mean_excitation_per_qubit(kappa: f64) -> f64 {
    (1.0 - langevin(kappa)) / 2.0
}

/// Inverts `n_particles * mean_excitation_per_qubit(kappa) = mean_n`.
///
/// Safeguarded Newton iteration inside a bisection bracket; the target
/// function is strictly monotone so the bracket never stalls.
pub fn kappa_from_mean_n(mean_n: f64, n_particles: u32) -> Result<f64> {
    let half_n = f64::from(n_particles) / 2.0;
    if !(mean_n > 0.0 && mean_n < half_n) {
        return Err(Error::Domain(format!(
            "mean excitation {mean_n} outside (0, {half_n}); \
             a VMF prior with kappa > 0 cannot represent it"
        )));
    }
    let target = mean_n / f64::from(n_particles);
    // mean_excitation ~ 1/2 - kappa/6 near zero and ~ 1/(2 kappa) for large
    // kappa, so this bracket always straddles the root.
    let mut lo = 1e-12_f64;
    let mut hi = (8.0_f64).max(2.0 / target);
    let f = |k: f64| mean_excitation_per_qubit(k) - target;
    let mut k = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fk = f(k);
        if fk.abs() < 1e-15 {
            break;
        }
        if fk > 0.0 {
            lo = k; // mean excitation decreasing: root is above
        } else {
            hi = k;
        }
        // d(mean)/dkappa = -(1/kappa^2 - 1/sinh^2)/2; cheap finite difference
        // is accurate enough and avoids a second series expansion.
        let h = 1e-6 * k.max(1e-6);
        let d = (f(k + h) - f(k - h)) / (2.0 * h);
        let newton = k - fk / d;
        k = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo) < 1e-14 * k.abs() {
            break;
        }
    }
    Ok(k)
}

/// The von Mises-Fisher prior `P(theta, phi) = xi exp(kappa cos(theta))`.
///
/// Only `kappa > 0` (peak at the north pole) is supported; the mirrored case
/// is handled by callers flipping poles. Immutable after construction.
#[derive(Debug, Clone, Copy)]
pub struct VmfPrior {
    kappa: f64,
    xi: f64,
}

impl VmfPrior {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::Domain(format!(
                "VMF concentration must be positive and finite, got {kappa}"
            )));
        }
        // xi = kappa / (4 pi sinh kappa), written with the overflow-safe
        // factor exp(kappa (cos t - 1)) pulled into density().
        let xi = if kappa > 700.0 {
            0.0 // representable only through log_density paths; see density()
        } else {
            kappa / (4.0 * PI * kappa.sinh())
        };
        Ok(Self { kappa, xi })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Normalization constant per steradian, `kappa / (4 pi sinh kappa)`.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Probability density per steradian at polar angle `theta`;
    /// independent of `phi`.
    pub fn density(&self, theta: f64) -> f64 {
        // xi e^{k cos t} = k/(2 pi) e^{k(cos t - 1)} / (1 - e^{-2k}),
        // stable for arbitrarily large kappa.
        let k = self.kappa;
        k / (TAU * -(-2.0 * k).exp_m1()) * (k * (theta.cos() - 1.0)).exp()
    }

    pub fn mean_excitation_per_qubit(&self) -> f64 {
        mean_excitation_per_qubit(self.kappa)
    }

    /// Draws a direction by exact inverse-CDF sampling:
    /// `cos(theta) = 1 + ln(u + (1-u) e^{-2 kappa}) / kappa` with `u`
    /// uniform, `phi` uniform on `[0, 2 pi)`.
    pub fn sample_direction<R: Rng + ?Sized>(&self, rng: &mut R) -> BlochDirection {
        let u: f64 = rng.gen();
        let k = self.kappa;
        let arg = (u + (1.0 - u) * (-2.0 * k).exp()).max(f64::MIN_POSITIVE);
        let cos_t = (1.0 + arg.ln() / k).clamp(-1.0, 1.0);
        let phi = rng.gen::<f64>() * TAU;
        BlochDirection::new(cos_t.acos(), phi)
    }
}
