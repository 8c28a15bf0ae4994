//! The negative-frequency fraction of a delayed pulse and its closed-form
//! limit.
//!
//! A Gaussian envelope switched on at `t = 0` and delayed by many widths
//! loses almost nothing to the switch-on; its spectrum's weight below zero
//! frequency is then set by the carrier alone, approaching
//! `eta = (1 - erf(omega0 sigma)) / 2`. This example computes the fraction
//! numerically for a delay of eight widths and prints it against the closed
//! form, for the carriers where localization is hardest to easiest.
//!
//! Run with: `cargo run --release --example infinite_delay_law`

use photon_locality::error::Result;
use photon_locality::grid::FrequencyGrid;
use photon_locality::spectral::{
    eta_infinite_delay, make_truncated_gaussian, spectrum_of, SpectrumMethod,
    TruncatedGaussianParams,
};

fn main() -> Result<()> {
    println!("negative-frequency fraction, delay of eight pulse widths");
    println!("{:>10} {:>16} {:>16} {:>11}", "omega0*s", "eta (numeric)", "eta (closed)", "gap");
    for omega0_sigma in [0.3, 0.5, 1.0, 1.5, 2.0] {
        let params = TruncatedGaussianParams::new(omega0_sigma, 1.0, 8.0)?;
        let pulse = make_truncated_gaussian(params)?;
        let grid = FrequencyGrid::new(omega0_sigma + 12.0, 65537)?;
        let spectrum = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm)?;
        let eta = spectrum.eta();
        let limit = eta_infinite_delay(omega0_sigma)?;
        println!(
            "{omega0_sigma:>10.2} {eta:>16.10} {limit:>16.10} {:>11.2e}",
            (eta - limit).abs()
        );
    }
    println!();
    println!("the numeric fraction reaches the closed form to better than 1e-4;");
    println!("shorter delays leave more switch-on damage and a larger fraction:");
    println!("{:>10} {:>16} {:>16}", "tau/sigma", "eta (numeric)", "excess over limit");
    for tau in [1.5, 3.0, 5.0, 8.0] {
        let params = TruncatedGaussianParams::new(1.0, 1.0, tau)?;
        let pulse = make_truncated_gaussian(params)?;
        let grid = FrequencyGrid::new(13.0, 65537)?;
        let eta = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm)?.eta();
        println!("{tau:>10.1} {eta:>16.10} {:>16.2e}", eta - eta_infinite_delay(1.0)?);
    }
    Ok(())
}
