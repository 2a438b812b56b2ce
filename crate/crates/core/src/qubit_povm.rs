//! Single-qubit coherent-spin POVM benchmark: Bayesian posterior, optimal
//! estimator, conditional fidelity, and the closed-form mean fidelity with a
//! quadrature cross-check.
//!
//! All occurrences of `1 - 2<n>` go through [`langevin`], whose series-stable
//! small-argument branch keeps the `kappa -> 0` limits finite.

use std::f64::consts::PI;

use crate::error::Error;
use crate::prior::{langevin, mean_excitation_per_qubit};
use crate::quad;
use crate::Result;

/// Closed-form mean POVM fidelity together with the coefficients entering it.
#[derive(Debug, Clone, Copy)]
pub struct PovmClosedForm {
    pub kappa: f64,
    pub script_a: f64,
    pub script_b_plus: f64,
    pub script_b_minus: f64,
    pub script_c_plus: f64,
    pub script_c_minus: f64,
    pub fidelity: f64,
}

/// Marginal outcome density `[1 + (1 - 2<n>) cos(theta_m)] / (4 pi)`.
pub fn evidence_1q(kappa: f64, theta_m: f64) -> f64 {
    (1.0 + langevin(kappa) * theta_m.cos()) / (4.0 * PI)
}

/// Bayesian-optimal guess angle after detecting polar angle `theta_m`.
///
/// The guess direction is the posterior mean of the Bloch vector, which
/// gives `tan(theta) = sin(theta_m) / [kappa + (kappa/(1 - 2<n>) - 2)
/// cos(theta_m)]`; the `atan2` branch keeps `theta` in `[0, pi]` even past
/// the point where the denominator crosses zero.
pub fn optimal_estimator_1q(kappa: f64, theta_m: f64) -> f64 {
    let l = langevin(kappa);
    theta_m
        .sin()
        .atan2(kappa + (kappa / l - 2.0) * theta_m.cos())
}

/// Mean fidelity conditioned on the detected angle, with the optimal guess
/// already substituted.
pub fn conditional_fidelity_1q(kappa: f64, theta_m: f64) -> f64 {
    let l = langevin(kappa);
    let (sin_m, cos_m) = theta_m.sin_cos();
    let d = (kappa + (kappa / l - 2.0) * cos_m).hypot(sin_m);
    (1.0 + l / kappa * (kappa * cos_m + d)) / (2.0 * (1.0 + l * cos_m))
}

/// Mean POVM fidelity averaged over all detected directions, evaluated from
/// the closed form.
///
/// The radicand factors `(3 - 6<n> - kappa)` and `(1 - 2<n> - kappa)` are
/// individually negative for every `kappa > 0`; their product being positive
/// is asserted and a violation reported as a numeric bug. Below
/// `kappa = 5e-2` the coefficients are differences of nearly equal large
/// terms, so the fidelity value is taken from the quadrature path instead.
pub fn mean_fidelity_1q_closed(kappa: f64) -> Result<PovmClosedForm> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let l = langevin(kappa);
    let n = mean_excitation_per_qubit(kappa);
    let f1 = 3.0 - 6.0 * n - kappa;
    let f2 = 1.0 - 2.0 * n - kappa;
    if f1 >= 0.0 || f2 >= 0.0 {
        return Err(Error::Numeric(format!(
            "radicand factors expected negative: {f1}, {f2} at kappa = {kappa}"
        )));
    }
    let product = f1 * f2;
    let root = product.sqrt();
    let script_a = 1.0 - kappa * kappa * l * l / product;
    let common = kappa * (kappa - 2.0 + 4.0 * n) / root;
    let script_b_plus = common + root / l;
    let script_b_minus = common - root / l;
    let c_sq_plus = script_a + script_b_plus * script_b_plus;
    let c_sq_minus = script_a + script_b_minus * script_b_minus;
    if c_sq_plus < -1e-9 || c_sq_minus < -1e-9 {
        return Err(Error::Numeric(format!(
            "negative radicand in C coefficients at kappa = {kappa}: {c_sq_plus}, {c_sq_minus}"
        )));
    }
    let script_c_plus = c_sq_plus.max(0.0).sqrt();
    let script_c_minus = c_sq_minus.max(0.0).sqrt();

    let fidelity = if kappa < 5e-2 {
        mean_fidelity_1q_quadrature(kappa)?
    } else {
        let log_term = ((script_c_plus + script_b_plus) * (script_c_minus - script_b_minus)
            / ((script_c_plus - script_b_plus) * (script_c_minus + script_b_minus)))
            .ln();
        0.5 + l * l / (16.0 * kappa * root)
            * (2.0 * (script_b_plus * script_c_plus - script_b_minus * script_c_minus)
                + script_a * log_term)
    };

    Ok(PovmClosedForm {
        kappa,
        script_a,
        script_b_plus,
        script_b_minus,
        script_c_plus,
        script_c_minus,
        fidelity,
    })
}

/// Mean POVM fidelity by adaptive quadrature of the conditional fidelity
/// against the outcome density.
pub fn mean_fidelity_1q_quadrature(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be positive, got {kappa}")));
    }
    let l = langevin(kappa);
    // 2 pi * evidence * sin(theta_m), with evidence written out
    quad::adaptive(
        |t| conditional_fidelity_1q(kappa, t) * (1.0 + l * t.cos()) * t.sin() / 2.0,
        0.0,
        PI,
        1e-10,
    )
}
