//! Fidelity bounds for on-demand single-photon sources, swept over the pulse
//! carrier.
//!
//! No physical (positive-frequency, causal) state can overlap a causal
//! single-photon pulse better than `sqrt(1 - eta)`; the localized two-mode
//! state achieves `F sqrt(1 - eta)` and a first-order expansion gives a
//! cheap lower bound. A mode-matched coherent pulse, the classical
//! benchmark, peaks at `1/sqrt(e)` and loses everywhere. This example runs a
//! small exact sweep over two delays and prints the CSV exactly as the
//! `sweep` subcommand writes it, followed by the bound ordering on one row.
//!
//! Run with: `cargo run --release --example bounds_sweep`

use num_complex::Complex64;
use photon_locality::bounds::{coherent_fidelity, sweep, DelaySpec, SweepConfig};
use photon_locality::error::Result;

fn main() -> Result<()> {
    let config = SweepConfig {
        omega_start: 0.4,
        omega_stop: 1.6,
        omega_step: 0.4,
        delays: vec![DelaySpec::Finite(1.5), DelaySpec::Finite(3.0), DelaySpec::Infinite],
        alpha: Complex64::new(1.0, 0.0),
        exact: true,
        grid_points: Some(16385),
        n_cut: None,
    };
    config.validate()?;
    let table = sweep(&config)?;
    print!("{}", table.to_csv());

    let row = table
        .points()
        .find(|p| (p.omega0_sigma - 0.8).abs() < 1e-12 && p.tau_over_sigma == DelaySpec::Finite(3.0))
        .expect("swept row");
    println!("\nrow omega0*sigma = 0.8, tau/sigma = 3:");
    println!("  upper bound     sqrt(1 - eta)             = {:.9}", row.f_upper);
    println!("  exact           F_state * sqrt(1 - eta)   = {:.9}", row.f_lower_exact.unwrap());
    println!("  perturbative    (1 - 0.0858 eta~) * upper = {:.9}", row.f_lower_pert);
    println!("  coherent        best classical pulse      = {:.9}", row.f_coherent);
    println!(
        "  unit-amplitude coherent limit at eta -> 0    = {:.9} (1/sqrt(e))",
        coherent_fidelity(Complex64::new(1.0, 0.0), 0.0)?
    );
    println!("\nordering: coherent < perturbative <= exact <= upper on every row.");
    Ok(())
}
