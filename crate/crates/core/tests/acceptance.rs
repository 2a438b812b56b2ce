//! Acceptance gate for the analytic library: one test per criterion, each
//! printing a single PASS/FAIL line (run with `--nocapture` to see them all).
//! Criteria 8 and 9 exercise the CLI and live in the CLI crate's acceptance
//! target.

use std::f64::consts::{FRAC_PI_2, PI};

use telebench::nqubit_povm::{
    asymptotic_fidelity, conditional_fidelity_nq, conditional_fidelity_nq_sums,
    fidelity_do_nothing_nq, mean_fidelity_nq, optimize_estimator,
};
use telebench::prior::{kappa_from_mean_n, mean_excitation_per_qubit};
use telebench::qubit_povm::{
    mean_fidelity_1q_closed, mean_fidelity_1q_quadrature, optimal_estimator_1q,
};
use telebench::qubit_projective::{
    crossover_excitation, fidelity_axis, fidelity_do_nothing, fidelity_equatorial,
    fidelity_no_prior,
};

fn report(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_uniform_limit_endpoints() {
    let mut worst = 0.0f64;
    for n in [1u32, 2, 3, 5, 10] {
        let expect = f64::from(n + 1) / f64::from(2 * n + 1);
        let got = mean_fidelity_nq(n, 1e-6).unwrap();
        worst = worst.max((got - expect).abs());
    }
    report(
        1,
        worst < 1e-4,
        &format!("(worst uniform-limit deviation {worst:.2e}, tolerance 1e-4)"),
    );
}

#[test]
fn criterion_2_equatorial_limits_and_monotonicity() {
    let low_ok = (fidelity_equatorial(1e-6) - 2.0 / 3.0).abs() < 1e-6;
    let high_ok = (fidelity_equatorial(1e8) - 1.0).abs() < 1e-6;
    let mut monotone = true;
    let mut prev = f64::INFINITY;
    for i in 0..=96 {
        let mean_n = 0.01 + (0.49 - 0.01) * i as f64 / 96.0;
        let f = fidelity_equatorial(kappa_from_mean_n(mean_n, 1).unwrap());
        monotone &= f <= prev + 1e-12;
        prev = f;
    }
    report(
        2,
        low_ok && high_ok && monotone,
        &format!("(limits {low_ok}/{high_ok}, decreasing in <n> {monotone})"),
    );
}

#[test]
fn criterion_3_cusp_reproduction() {
    let (kappa_c, n_c) = crossover_excitation();
    let n_c_ok = (0.29..=0.31).contains(&n_c) && (n_c - 1.0 / (kappa_c + 2.0)).abs() < 1e-12;
    let mut worst = 0.0f64;
    for i in 0..=96 {
        let mean_n = 0.01 + (0.49 - 0.01) * i as f64 / 96.0;
        let kappa = kappa_from_mean_n(mean_n, 1).unwrap();
        let envelope = fidelity_do_nothing(kappa).max(fidelity_no_prior(kappa));
        worst = worst.max((fidelity_axis(kappa, 0.0).unwrap().fidelity - envelope).abs());
    }
    report(
        3,
        n_c_ok && worst < 1e-10,
        &format!("(n_c = {n_c:.4}, envelope deviation {worst:.2e})"),
    );
}

/// Non-decreasing over a dense detected-angle grid.
fn estimator_is_monotone(kappa: f64) -> bool {
    let mut prev = f64::NEG_INFINITY;
    for i in 0..=4000 {
        let t = PI * f64::from(i) / 4000.0;
        let g = optimal_estimator_1q(kappa, t);
        if g < prev - 1e-9 {
            return false;
        }
        prev = g;
    }
    true
}

#[test]
fn criterion_4_povm_critical_point() {
    // bisect the monotone / non-monotone transition of the optimal guess
    // curve in kappa
    let (mut lo, mut hi) = (0.3f64, 3.0f64);
    assert!(estimator_is_monotone(lo) && !estimator_is_monotone(hi));
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if estimator_is_monotone(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let kappa_0 = 0.5 * (lo + hi);
    let n_0 = mean_excitation_per_qubit(kappa_0);
    let pass = (0.80..=0.82).contains(&kappa_0) && (0.36..=0.38).contains(&n_0);
    report(
        4,
        pass,
        &format!(
            "(measured transition kappa_0 = {kappa_0:.4}, n_0 = {n_0:.4}; \
             expected kappa_0 in [0.80, 0.82], n_0 in [0.36, 0.38])"
        ),
    );
}

#[test]
fn criterion_5_closed_form_vs_quadrature() {
    let mut worst = 0.0f64;
    for i in 0..31 {
        let kappa = 5e-2 * (50.0f64 / 5e-2).powf(i as f64 / 30.0);
        let closed = mean_fidelity_1q_closed(kappa).unwrap().fidelity;
        let quad = mean_fidelity_1q_quadrature(kappa).unwrap();
        worst = worst.max((closed - quad).abs());
    }
    report(
        5,
        worst < 1e-8,
        &format!("(worst closed-vs-quadrature deviation {worst:.2e}, tolerance 1e-8)"),
    );
}

#[test]
fn criterion_6_dual_path_nested_sums() {
    let mut worst = 0.0f64;
    for n in [1u32, 3, 6, 9, 12] {
        for j in 0..5 {
            let kappa = 1.0 + 9.0 * j as f64 / 4.0;
            for i in 0..5 {
                let theta_m = PI * (i as f64 + 0.5) / 5.0;
                let theta_tilde = optimize_estimator(n, kappa, theta_m).unwrap();
                let a = conditional_fidelity_nq(n, kappa, theta_m, theta_tilde).unwrap();
                let b = conditional_fidelity_nq_sums(n, kappa, theta_m, theta_tilde).unwrap();
                worst = worst.max((a - b).abs());
            }
        }
    }
    report(
        6,
        worst < 1e-6,
        &format!("(worst dual-path deviation {worst:.2e}, tolerance 1e-6)"),
    );
}

#[test]
fn criterion_7_ordering_constraints() {
    let mut pass = true;
    let mut detail = String::new();
    for n in [1u32, 2, 3, 5, 10] {
        for i in 0..25 {
            let kappa = 5e-2 * (20.0f64 / 5e-2).powf(i as f64 / 24.0);
            let povm = mean_fidelity_nq(n, kappa).unwrap();
            let dn = fidelity_do_nothing_nq(n, kappa).unwrap();
            let mean_n = f64::from(n) * mean_excitation_per_qubit(kappa);
            let finf = asymptotic_fidelity(mean_n);
            let mut ok = dn <= povm + 1e-9 && povm <= finf + 1e-9;
            if n == 1 {
                ok &= povm <= fidelity_axis(kappa, FRAC_PI_2).unwrap().fidelity + 1e-9;
            }
            if !ok && pass {
                detail = format!("(first violation at N = {n}, kappa = {kappa:.3})");
                pass = false;
            }
        }
    }
    if pass {
        detail = "(do-nothing <= POVM <= projective/F_infinity over the full grid)".into();
    }
    report(7, pass, &detail);
}
