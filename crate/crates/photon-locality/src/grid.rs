//! Symmetric frequency grids and trapezoid integration.

use crate::error::{invalid, Result};
use num_complex::Complex64;

/// Default number of samples for spectra: `2^16 + 1`, odd so that
/// `omega = 0` is itself a sample and the positive half is well defined.
pub const DEFAULT_POINTS: usize = (1 << 16) + 1;

/// Uniform grid on `[-omega_max, omega_max]` with an odd number of samples.
///
/// Sample `i` sits at `(i - (n-1)/2) * spacing`, so the origin is exact and
/// the grid is symmetric to the last bit.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    omega_max: f64,
    n: usize,
    spacing: f64,
}

impl FrequencyGrid {
    /// Build a grid; `omega_max` must be positive and finite, `n` odd and at least 3.
    pub fn new(omega_max: f64, n: usize) -> Result<Self> {
        if !(omega_max.is_finite() && omega_max > 0.0) {
            return Err(invalid!("grid omega_max must be positive and finite, got {omega_max}"));
        }
        if n < 3 || n % 2 == 0 {
            return Err(invalid!("grid needs an odd sample count >= 3, got {n}"));
        }
        let spacing = 2.0 * omega_max / (n - 1) as f64;
        Ok(FrequencyGrid { omega_max, n, spacing })
    }

    /// Default grid for a pulse with carrier `omega0` and width `sigma`:
    /// `omega_max = omega0 + 12/sigma` with [`DEFAULT_POINTS`] samples, wide
    /// enough that everything beyond the edge is handled by the asymptotic
    /// tail expansions.
    pub fn default_for(omega0: f64, sigma: f64) -> Self {
        Self::new(omega0 + 12.0 / sigma, DEFAULT_POINTS).expect("default grid parameters are valid")
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Index of the `omega = 0` sample.
    pub fn zero_index(&self) -> usize {
        (self.n - 1) / 2
    }

    /// Frequency of sample `i`; exactly zero at [`Self::zero_index`] and
    /// exactly antisymmetric about it.
    pub fn omega(&self, i: usize) -> f64 {
        (i as i64 - self.zero_index() as i64) as f64 * self.spacing
    }

    /// All sample frequencies in ascending order.
    pub fn omegas(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.omega(i)).collect()
    }

    /// Frequencies of the non-negative half, starting at zero.
    pub fn positive_omegas(&self) -> Vec<f64> {
        (self.zero_index()..self.n).map(|i| self.omega(i)).collect()
    }
}

/// Trapezoid rule over uniformly spaced complex samples.
pub fn trapezoid(values: &[Complex64], spacing: f64) -> Complex64 {
    if values.len() < 2 {
        return Complex64::default();
    }
    let inner: Complex64 = values[1..values.len() - 1].iter().sum();
    (inner + 0.5 * (values[0] + values[values.len() - 1])) * spacing
}

/// Trapezoid rule over uniformly spaced real samples.
pub fn trapezoid_real(values: &[f64], spacing: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    (inner + 0.5 * (values[0] + values[values.len() - 1])) * spacing
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_bad_parameters() {
        assert!(FrequencyGrid::new(0.0, 65).is_err());
        assert!(FrequencyGrid::new(-1.0, 65).is_err());
        assert!(FrequencyGrid::new(f64::INFINITY, 65).is_err());
        assert!(FrequencyGrid::new(5.0, 64).is_err());
        assert!(FrequencyGrid::new(5.0, 1).is_err());
        assert!(FrequencyGrid::new(5.0, 65).is_ok());
    }

    #[test]
    fn origin_is_exact_and_grid_antisymmetric() {
        let g = FrequencyGrid::new(13.0, 4097).unwrap();
        assert_eq!(g.omega(g.zero_index()), 0.0);
        for i in 0..g.len() {
            let j = g.len() - 1 - i;
            assert_eq!(g.omega(i), -g.omega(j));
        }
        assert_abs_diff_eq!(g.omega(g.len() - 1), 13.0, epsilon = 1e-12);
        assert_eq!(g.positive_omegas().len(), g.zero_index() + 1);
        assert_eq!(g.positive_omegas()[0], 0.0);
    }

    #[test]
    fn trapezoid_integrates_smooth_decaying_functions_to_high_order() {
        // Gaussian over a wide symmetric span: boundary terms are negligible,
        // so the trapezoid rule is far better than its generic h^2 bound.
        let g = FrequencyGrid::new(10.0, 2001).unwrap();
        let vals: Vec<f64> = (0..g.len()).map(|i| (-g.omega(i) * g.omega(i)).exp()).collect();
        assert_abs_diff_eq!(trapezoid_real(&vals, g.spacing()), std::f64::consts::PI.sqrt(), epsilon = 1e-12);
        let cvals: Vec<Complex64> = (0..g.len())
            .map(|i| Complex64::new(0.0, g.omega(i)).exp() * (-g.omega(i) * g.omega(i) / 2.0).exp())
            .collect();
        let want = (2.0 * std::f64::consts::PI).sqrt() * (-0.5f64).exp();
        assert!((trapezoid(&cvals, g.spacing()) - want).norm() < 1e-10);
    }
}
