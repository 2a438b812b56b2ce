//! Geometry of pure qubit and spin-coherent states on the Bloch sphere.

use std::f64::consts::{PI, TAU};

/// A point (theta, phi) on the unit sphere, in radians.
///
/// Carries input states, measurement outcomes, and guesses. Angles are
/// normalized on construction: `theta` ends up in `[0, pi]` and `phi` in
/// `[0, 2*pi)`. At the poles every `phi` compares equal.
#[derive(Debug, Clone, Copy)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    /// Builds a direction, canonicalizing the angles. A polar angle outside
    /// `[0, pi]` is folded back by reflecting through the meridian plane
    /// (e.g. `(-t, phi)` becomes `(t, phi + pi)`), so signed guess angles
    /// from the axis-benchmark formulas map onto valid directions.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        let mut p = phi;
        if t > PI {
            t = TAU - t;
            p += PI;
        }
        let p = if t == 0.0 || t == PI {
            0.0
        } else {
            p.rem_euclid(TAU)
        };
        Self { theta: t, phi: p }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The diametrically opposite point.
    pub fn antipode(&self) -> Self {
        Self::new(PI - self.theta, self.phi + PI)
    }

    pub fn north_pole() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    /// Cartesian unit vector (x, y, z).
    pub fn to_unit_vector(&self) -> [f64; 3] {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        [st * cp, st * sp, ct]
    }

    /// Direction of a (not necessarily normalized) nonzero vector.
    pub fn from_vector(v: [f64; 3]) -> Self {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]);
        Self::new(theta, phi)
    }
}

impl PartialEq for BlochDirection {
    fn eq(&self, other: &Self) -> bool {
        self.theta == other.theta && self.phi == other.phi
    }
}

/// Angle `alpha` in `[0, pi]` between two directions.
///
/// Computed from the spherical law of cosines with the cosine clamped to
/// `[-1, 1]` before `acos`, which guards the endpoints `alpha ~ 0, pi`.
pub fn angle_between(a: BlochDirection, b: BlochDirection) -> f64 {
    cos_angle_between(a, b).acos()
}

fn cos_angle_between(a: BlochDirection, b: BlochDirection) -> f64 {
    let c = a.theta.cos() * b.theta.cos()
        + a.theta.sin() * b.theta.sin() * (a.phi - b.phi).cos();
    c.clamp(-1.0, 1.0)
}

/// Squared overlap `|<a|b>|^2 = cos^2(alpha/2)` of the two qubit states.
pub fn qubit_overlap_sq(a: BlochDirection, b: BlochDirection) -> f64 {
    (1.0 + cos_angle_between(a, b)) / 2.0
}

/// Squared overlap `cos^(2N)(alpha/2)` of two N-qubit spin coherent states.
///
/// Evaluated as `exp(2N log cos(alpha/2))` away from `alpha = pi` so large
/// `N` does not underflow through repeated powering; exactly 0 at `alpha = pi`.
pub fn spin_overlap_sq(a: BlochDirection, b: BlochDirection, n_particles: u32) -> f64 {
    debug_assert!(n_particles >= 1);
    let half = qubit_overlap_sq(a, b);
    if half == 0.0 {
        return 0.0;
    }
    (f64::from(n_particles) * half.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn angle_between_landmarks() {
        let a = BlochDirection::new(0.3, 1.2);
        assert_abs_diff_eq!(angle_between(a, a), 0.0, epsilon = 1e-12);

        let n = BlochDirection::new(0.0, 0.0);
        let s = BlochDirection::new(PI, 0.0);
        assert_abs_diff_eq!(angle_between(n, s), PI, epsilon = 1e-12);

        let x = BlochDirection::new(PI / 2.0, 0.0);
        let y = BlochDirection::new(PI / 2.0, PI / 2.0);
        assert_abs_diff_eq!(angle_between(x, y), PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn qubit_overlap_landmarks() {
        let a = BlochDirection::new(1.1, 2.0);
        assert_abs_diff_eq!(qubit_overlap_sq(a, a), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(qubit_overlap_sq(a, a.antipode()), 0.0, epsilon = 1e-12);

        let pole = BlochDirection::north_pole();
        let eq = BlochDirection::new(PI / 2.0, 0.7);
        assert_abs_diff_eq!(qubit_overlap_sq(pole, eq), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn spin_overlap_landmarks() {
        let a = BlochDirection::new(0.4, 0.1);
        let b = BlochDirection::new(2.0, 5.0);
        assert_abs_diff_eq!(
            spin_overlap_sq(a, b, 1),
            qubit_overlap_sq(a, b),
            epsilon = 1e-15
        );
        assert_eq!(spin_overlap_sq(a, a.antipode(), 7), 0.0);

        let pole = BlochDirection::north_pole();
        let eq = BlochDirection::new(PI / 2.0, 0.0);
        assert_abs_diff_eq!(spin_overlap_sq(pole, eq, 2), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn pole_degeneracy() {
        let a = BlochDirection::new(0.0, 1.0);
        let b = BlochDirection::new(0.0, 5.0);
        assert_eq!(a, b);
        assert_eq!(BlochDirection::new(PI, 0.3), BlochDirection::new(PI, 4.0));
    }

    #[test]
    fn negative_theta_folds_through_pole() {
        let a = BlochDirection::new(-0.4, 0.0);
        let b = BlochDirection::new(0.4, PI);
        assert_abs_diff_eq!(angle_between(a, b), 0.0, epsilon = 1e-12);
    }

    fn direction() -> impl Strategy<Value = BlochDirection> {
        (0.0..=PI, 0.0..TAU).prop_map(|(t, p)| BlochDirection::new(t, p))
    }

    proptest! {
        #[test]
        fn angle_is_symmetric(a in direction(), b in direction()) {
            prop_assert!((angle_between(a, b) - angle_between(b, a)).abs() < 1e-12);
        }

        #[test]
        fn triangle_inequality(a in direction(), b in direction(), c in direction()) {
            let ab = angle_between(a, b);
            let bc = angle_between(b, c);
            let ac = angle_between(a, c);
            prop_assert!(ac <= ab + bc + 1e-12);
        }

        #[test]
        fn overlap_complement(a in direction(), b in direction()) {
            let s = qubit_overlap_sq(a, b) + qubit_overlap_sq(a, b.antipode());
            prop_assert!((s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn spin_overlap_is_power(a in direction(), b in direction(), n in 1u32..=32) {
            let expect = qubit_overlap_sq(a, b).powi(n as i32);
            prop_assert!((spin_overlap_sq(a, b, n) - expect).abs() < 1e-12);
        }

        #[test]
        fn unit_vector_round_trip(a in direction()) {
            let back = BlochDirection::from_vector(a.to_unit_vector());
            // acos amplifies rounding near zero separation: a dot-product
            // error of a few ulp maps to an angle of order 1e-8
            prop_assert!(angle_between(a, back) < 1e-7);
        }
    }
}
