//! Gauss–Legendre panel quadrature.
//!
//! Used by the verification route for Fourier transforms of pulse envelopes
//! and by test oracles that need an integrator independent of the trapezoid
//! grids used elsewhere in the crate.

use num_complex::Complex64;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Nodes are found by Newton iteration on the Legendre polynomial `P_n`,
/// seeded with the Chebyshev-like estimate; this is accurate to machine
/// precision for the modest orders (`n <= 64`) used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "rule order must be at least 2");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Symmetric rule: solve for the non-negative half and mirror.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        let mut polish = 0;
        for _ in 0..100 {
            // Recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            // Two more quadratically convergent steps after reaching ~1e-13
            // leave the root exact to the last bit.
            if dx.abs() < 1e-13 {
                polish += 1;
                if polish > 2 {
                    break;
                }
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrate a complex-valued function over `[a, b]` with `panels` equal
/// panels of the given Gauss–Legendre rule.
pub fn integrate_panels<F>(f: F, a: f64, b: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = rule;
    let width = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let half = 0.5 * width;
        for (x, w) in nodes.iter().zip(weights) {
            acc += f(mid + half * x) * (w * half);
        }
    }
    acc
}

/// Real-valued counterpart of [`integrate_panels`].
pub fn integrate_panels_real<F>(f: F, a: f64, b: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> f64
where
    F: Fn(f64) -> f64,
{
    integrate_panels(|x| Complex64::new(f(x), 0.0), a, b, panels, rule).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nodes_reproduce_known_low_order_rules() {
        let (x, w) = gauss_legendre(2);
        assert_abs_diff_eq!(x[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_abs_diff_eq!(x[0], -(0.6f64).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn rule_is_exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = gauss_legendre(8);
        // x^14 over [-1, 1] -> 2/15, within machine precision.
        let got = integrate_panels_real(|x| x.powi(14), -1.0, 1.0, 1, &rule);
        assert_abs_diff_eq!(got, 2.0 / 15.0, epsilon = 1e-15);
        // Degree 16 is not exact for the 8-point rule, so the error is visible.
        let got = integrate_panels_real(|x| x.powi(16), -1.0, 1.0, 1, &rule);
        assert!((got - 2.0 / 17.0).abs() > 1e-9);
    }

    #[test]
    fn panels_resolve_oscillatory_integrals() {
        // \int_0^{2pi} e^{i 5 t} dt = 0 and \int_0^1 e^{i t} dt = e^i - 1.
        let rule = gauss_legendre(16);
        let z = integrate_panels(|t| Complex64::new(0.0, 5.0 * t).exp(), 0.0, 2.0 * std::f64::consts::PI, 8, &rule);
        assert!(z.norm() < 1e-13);
        let z = integrate_panels(|t| Complex64::new(0.0, t).exp(), 0.0, 1.0, 1, &rule);
        let want = (Complex64::new(0.0, 1.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((z - want).norm() < 1e-14);
    }

    #[test]
    fn gaussian_integral_matches_erf_normalization() {
        let rule = gauss_legendre(16);
        let got = integrate_panels_real(|x| (-x * x).exp(), -8.0, 8.0, 24, &rule);
        assert_abs_diff_eq!(got, std::f64::consts::PI.sqrt(), epsilon = 1e-13);
    }
}
