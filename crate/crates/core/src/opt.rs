//! Golden-section search for scalar maximization.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[a, b]`, returning `(x_max, f_max)`.
///
/// Converges unconditionally for unimodal `f`; callers with multi-modal
/// objectives are expected to bracket the global maximum with a coarse grid
/// first.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    x_tol: f64,
) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > x_tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 1.3) * (x - 1.3), 0.0, 3.0, 1e-10);
        assert_abs_diff_eq!(x, 1.3, epsilon = 1e-8);
        assert_abs_diff_eq!(fx, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn handles_boundary_maximum() {
        let (x, _) = golden_section_max(|x| x, 0.0, 2.0, 1e-10);
        assert_abs_diff_eq!(x, 2.0, epsilon = 1e-8);
    }
}
