//! From one causal pulse to an orthogonal mode pair whose fields cancel
//! before the pulse starts.
//!
//! Subtracting the right multiple `beta` of the reflected conjugate from the
//! spectrum makes the result orthogonal to its own reflection; splitting the
//! modified spectrum into its positive-frequency part `xi1` and reflected
//! negative part `xi2` then gives two orthonormal modes obeying the
//! compensation condition `E2(t) = -C conj(E1(t))` for `t < 0`. That
//! cancellation is what lets a two-mode state hide all field energy from
//! negative times. This example prints the modification constants, both
//! routes to the improved fraction, and the measured compensation residual
//! as the frequency grid refines.
//!
//! Run with: `cargo run --release --example mode_compensation`

use photon_locality::error::Result;
use photon_locality::grid::FrequencyGrid;
use photon_locality::modes::{extract_modes, orthogonalize, tail_residual};
use photon_locality::spectral::{
    make_truncated_gaussian, spectrum_of, SpectrumMethod, TruncatedGaussianParams,
};

fn main() -> Result<()> {
    let params = TruncatedGaussianParams::new(1.0, 1.0, 3.0)?;
    let pulse = make_truncated_gaussian(params)?;

    println!("pulse omega0*sigma = 1, tau/sigma = 3");
    for points in [4097usize, 8193, 16385] {
        let grid = FrequencyGrid::new(13.0, points)?;
        let spectrum = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm)?;
        let ms = orthogonalize(&spectrum)?;
        let pair = extract_modes(&ms)?;

        // Compensation residual: how far E2 + C conj(E1) is from zero on a
        // window strictly before the pulse, relative to the field peak.
        let times: Vec<f64> = (0..48).map(|i| -8.0 + i as f64 * (7.8 / 47.0)).collect();
        let residual = tail_residual(&pair, &times)?;

        if points == 16385 {
            println!("  beta              {:+.9} {:+.9}i", ms.beta().re, ms.beta().im);
            println!("  eta               {:.9}", spectrum.eta());
            println!("  eta~ (quadrature) {:.9}", ms.eta_tilde());
            println!("  eta~ (closed)     {:.9}", ms.eta_tilde_closed_form());
            println!("  mode overlap      {:.3e}", pair.xi1.inner(&pair.xi2).norm());
            println!("  C                 {:.9}   gamma {:.9}", pair.c, pair.gamma);
        }
        println!("  grid {points:>6} points: compensation residual {residual:.3e}");
    }
    println!("\nthe residual is pure quadrature error: it falls as the grid refines,");
    println!("consistent with the exact continuum cancellation.");
    Ok(())
}
