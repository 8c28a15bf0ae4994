//! Helpers shared by the integration suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use photon_locality::grid::FrequencyGrid;
use photon_locality::spectral::{Spectrum, TailExpansion};

fn bump(omega: f64, center: f64, width: f64, amp: Complex64) -> Complex64 {
    amp * (-(omega - center) * (omega - center) / (2.0 * width * width)).exp()
}

/// A random spectrum dominated by positive-frequency bumps, contaminated by
/// one negative-frequency bump carrying at most ~25% of the squared norm, so
/// that the fraction stays safely below the degenerate point 1/2.
///
/// Gaussian bumps decay superexponentially, so the empty asymptotic tails
/// are exact at the grid edge and algebraic contracts can be tested at full
/// tightness.
pub fn random_spectrum(rng: &mut ChaCha8Rng) -> Spectrum {
    let grid = FrequencyGrid::new(12.0, 2049).unwrap();
    let n_bumps = rng.gen_range(1..=3);
    let mut main: Vec<(f64, f64, Complex64)> = Vec::new();
    for _ in 0..n_bumps {
        let center = rng.gen_range(1.5..4.5);
        let width = rng.gen_range(0.3..1.0);
        let amp = Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
        main.push((center, width, amp));
    }
    let main_values: Vec<Complex64> = grid
        .omegas()
        .iter()
        .map(|&w| main.iter().map(|&(c, s, a)| bump(w, c, s, a)).sum())
        .collect();

    // Contamination carrying a random fraction of up to 25% of the main
    // squared norm, placed at negative frequencies.
    let (cc, cw) = (rng.gen_range(-3.0..-0.8), rng.gen_range(0.3..1.0));
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let raw: Vec<Complex64> = grid.omegas().iter().map(|&w| bump(w, cc, cw, phase)).collect();
    let norm2 = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let epsilon = rng.gen_range(0.0..0.5);
    let scale = epsilon * (norm2(&main_values) / norm2(&raw)).sqrt();

    let values: Vec<Complex64> =
        main_values.iter().zip(&raw).map(|(m, c)| m + scale * c).collect();
    Spectrum::from_samples(grid, values, TailExpansion::default()).unwrap()
}
