//! Gauss-Legendre quadrature: fixed rules plus adaptive bisection.

use crate::error::Error;
use crate::Result;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the Legendre polynomial, seeded with the Chebyshev
    /// approximation to the roots.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over `[a, b]` with this fixed rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive Gauss-Legendre integration of `f` over `[a, b]` to absolute
/// tolerance `tol`.
///
/// Each interval is accepted when the 15-point estimate agrees with the sum
/// of the two half-interval estimates; otherwise it is bisected, with the
/// tolerance split between the halves.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    thread_local! {
        static RULE: GaussLegendre = GaussLegendre::new(15);
    }
    RULE.with(|rule| {
        let mut total = 0.0;
        let mut worst = 0.0_f64;
        // explicit stack of (a, b, coarse_estimate, tol, depth)
        let whole = rule.integrate(a, b, |x| f(x));
        let mut stack = vec![(a, b, whole, tol.max(1e-300), 0u32)];
        while let Some((a, b, coarse, tol, depth)) = stack.pop() {
            let mid = 0.5 * (a + b);
            let left = rule.integrate(a, mid, |x| f(x));
            let right = rule.integrate(mid, b, |x| f(x));
            let err = (left + right - coarse).abs();
            if err <= tol || depth >= 48 {
                total += left + right;
                if err > tol {
                    worst = worst.max(err);
                }
                continue;
            }
            stack.push((a, mid, left, 0.5 * tol, depth + 1));
            stack.push((mid, b, right, 0.5 * tol, depth + 1));
        }
        if worst > 0.0 {
            return Err(Error::QuadratureNonConvergence {
                achieved: worst,
                requested: tol,
            });
        }
        Ok(total)
    })
}
