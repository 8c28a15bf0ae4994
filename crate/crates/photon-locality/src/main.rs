//! Thin command-line front end over the `photon_locality` library.
//!
//! Five subcommands cover the library's pipeline stages: `sweep` (fidelity
//! bounds CSV), `state` (localized two-mode state JSON), `density`
//! (energy-density CSVs for the comparison states), `modes` (spectrum, mode
//! pair, and field-profile CSVs), and `verify` (named invariant checks).
//! Data files are byte-deterministic; each run also writes a manifest with
//! the resolved parameters, library version, and the run's only timestamp.
//!
//! Exit codes: 0 success, 1 failed verification, 2 sweep with error rows,
//! 64 usage/parameter errors, 65 data errors (degenerate input, truncation,
//! accuracy gates), 74 I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use photon_locality::bounds::{self, DelaySpec, SweepConfig, INFINITE_DELAY_EMULATION};
use photon_locality::config::{
    parse_bool, parse_delay, parse_delays, parse_f64, parse_range, parse_time_grid, parse_usize,
    pick, pick_opt, ConfigMap, ResolvedParams,
};
use photon_locality::error::{Error, Result};
use photon_locality::fockspace::{localized_state, FockTruncation, LocalizedStateVector};
use photon_locality::grid::FrequencyGrid;
use photon_locality::io;
use photon_locality::modes::{
    coherent_localized_mode, extract_modes, orthogonalize, pair_field_profiles, PulseModePair,
};
use photon_locality::observables::{
    energy_density_coherent, energy_density_single_photon, energy_density_state,
    glauber_intensity, CoherentParams,
};
use photon_locality::spectral::{
    make_truncated_gaussian, spectrum_of, Spectrum, SpectrumMethod, TruncatedGaussianParams,
};
use photon_locality::verify::{check_names, run_checks, VerifyOptions};

const THREADS_ENV: &str = "PHOTON_LOCALITY_THREADS";

#[derive(Parser)]
#[command(
    name = "photon-locality",
    version,
    about = "Strictly localized approximations to single-photon pulses: \
             bounds sweeps, state construction, densities, modes, verification"
)]
struct Cli {
    /// Defaults file of `key = value` lines (# comments); flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Suppress progress notes on stderr (data and reports are unaffected).
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the fidelity bounds over the carrier-width product; write CSV.
    Sweep(SweepArgs),
    /// Build the localized two-mode state for one pulse; write JSON.
    State(StateArgs),
    /// Energy densities of the comparison states for one pulse; write CSVs.
    Density(DensityArgs),
    /// Spectra, orthogonal mode pair, and field profiles; write CSVs.
    Modes(ModesArgs),
    /// Run named invariant checks and print PASS/FAIL per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Carrier-width products, `start:stop:step`.
    #[arg(long = "omega-sigma", value_name = "RANGE")]
    omega_sigma: Option<String>,
    /// Comma-separated delay ratios; `inf` selects the closed-form limit.
    #[arg(long = "tau-ratio", value_name = "LIST")]
    tau_ratio: Option<String>,
    /// Coherent amplitude for the baseline column.
    #[arg(long, value_name = "RE", allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Compute the exact fidelity column (full Fock pipeline per row).
    #[arg(long, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    exact: Option<bool>,
    /// Frequency samples per spectrum (default: resolution-matched).
    #[arg(long = "grid-points", value_name = "N")]
    grid_points: Option<usize>,
    /// Fock truncation for the exact column (default: tail-bound automatic).
    #[arg(long, value_name = "N")]
    ncut: Option<usize>,
    /// Output CSV path.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StateArgs {
    /// Carrier-width product of the pulse.
    #[arg(long = "omega-sigma", value_name = "X")]
    omega_sigma: Option<f64>,
    /// Delay ratio; `inf` is emulated with a delay of eight widths.
    #[arg(long = "tau-ratio", value_name = "X|inf")]
    tau_ratio: Option<String>,
    /// Fock truncation (default: tail-bound automatic).
    #[arg(long, value_name = "N")]
    ncut: Option<usize>,
    /// Frequency samples (default: resolution-matched).
    #[arg(long = "grid-points", value_name = "N")]
    grid_points: Option<usize>,
    /// Output JSON path.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    /// Carrier-width product of the pulse.
    #[arg(long = "omega-sigma", value_name = "X")]
    omega_sigma: Option<f64>,
    /// Delay ratio; `inf` is emulated with a delay of eight widths.
    #[arg(long = "tau-ratio", value_name = "X|inf")]
    tau_ratio: Option<String>,
    /// Coherent amplitude for the classical comparison pulse.
    #[arg(long, value_name = "RE", allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Fock truncation (default: tail-bound automatic).
    #[arg(long, value_name = "N")]
    ncut: Option<usize>,
    /// Frequency samples (default: resolution-matched).
    #[arg(long = "grid-points", value_name = "N")]
    grid_points: Option<usize>,
    /// Observation times, `start:stop:step` in pulse widths.
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    times: Option<String>,
    /// Output directory for the four CSVs and the manifest.
    #[arg(long = "out-dir", value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ModesArgs {
    /// Carrier-width product of the pulse.
    #[arg(long = "omega-sigma", value_name = "X")]
    omega_sigma: Option<f64>,
    /// Delay ratio; `inf` is emulated with a delay of eight widths.
    #[arg(long = "tau-ratio", value_name = "X|inf")]
    tau_ratio: Option<String>,
    /// Frequency samples (default: resolution-matched).
    #[arg(long = "grid-points", value_name = "N")]
    grid_points: Option<usize>,
    /// Field-profile times, `start:stop:step` in pulse widths.
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    times: Option<String>,
    /// Output directory for the five CSVs and the manifest.
    #[arg(long = "out-dir", value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// List the available checks without running them.
    #[arg(long)]
    list: bool,
    /// Run only these comma-separated checks (default: all).
    #[arg(long, value_name = "NAMES")]
    only: Option<String>,
    /// Multiply every tolerance (values below 1 tighten the checks).
    #[arg(long = "tol-scale", value_name = "X")]
    tol_scale: Option<f64>,
    /// Orthogonalize with the wrong quadratic root to prove the harness
    /// detects faults; the fraction checks must then fail.
    #[arg(long = "inject-beta-plus")]
    inject_beta_plus: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(64);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match setup_threads().and_then(|()| run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Cap the global worker pool from the environment before any parallel work.
fn setup_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n = raw
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Unsupported(format!("worker pool setup failed: {e}")))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let config = match &cli.config {
        Some(path) => ConfigMap::from_file(path)?,
        None => ConfigMap::empty(),
    };
    match &cli.command {
        Command::Sweep(args) => run_sweep(args, &config, cli.quiet),
        Command::State(args) => run_state(args, &config, cli.quiet),
        Command::Density(args) => run_density(args, &config, cli.quiet),
        Command::Modes(args) => run_modes(args, &config, cli.quiet),
        Command::Verify(args) => run_verify(args, &config),
    }
}

fn note(quiet: bool, msg: &str) {
    if !quiet {
        eprintln!("{msg}");
    }
}

/// Report lines go to stdout; a closed pipe (e.g. `verify --list | head`)
/// ends the run quietly instead of panicking.
fn report(line: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn delay_field(delay: DelaySpec) -> String {
    match delay {
        DelaySpec::Finite(v) => format!("{v}"),
        DelaySpec::Infinite => "inf".to_string(),
    }
}

fn opt_field<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "auto".to_string(), |x| x.to_string())
}

fn run_sweep(args: &SweepArgs, config: &ConfigMap, quiet: bool) -> Result<ExitCode> {
    let range_flag = args.omega_sigma.as_deref().map(parse_range).transpose()?;
    let (omega_start, omega_stop, omega_step) =
        pick(range_flag, config, "omega-sigma", parse_range, (0.2, 3.0, 0.1))?;
    let delays_flag = args.tau_ratio.as_deref().map(parse_delays).transpose()?;
    let delays = pick(delays_flag, config, "tau-ratio", parse_delays, vec![DelaySpec::Finite(3.0)])?;
    let alpha = pick(args.alpha, config, "alpha", parse_f64, 1.0)?;
    let exact = pick(args.exact, config, "exact", parse_bool, false)?;
    let grid_points = pick_opt(args.grid_points, config, "grid-points", parse_usize)?;
    let n_cut = pick_opt(args.ncut, config, "ncut", parse_usize)?;
    let out = pick(
        args.out.clone(),
        config,
        "out",
        |s| Ok(PathBuf::from(s)),
        PathBuf::from("bounds.csv"),
    )?;

    let sweep_config = SweepConfig {
        omega_start,
        omega_stop,
        omega_step,
        delays: delays.clone(),
        alpha: Complex64::new(alpha, 0.0),
        exact,
        grid_points,
        n_cut,
    };
    sweep_config.validate()?;
    let table = bounds::sweep(&sweep_config)?;

    io::write_text(&out, &table.to_csv())?;
    note(quiet, &format!("wrote {}", out.display()));

    let mut params = ResolvedParams::default();
    params.record("omega_sigma", format!("{omega_start}:{omega_stop}:{omega_step}"));
    params.record(
        "tau_ratio",
        delays.iter().map(|d| delay_field(*d)).collect::<Vec<_>>().join(","),
    );
    params.record("alpha", alpha);
    params.record("exact", exact);
    params.record("grid_points", opt_field(grid_points));
    params.record("ncut", opt_field(n_cut));
    params.record("out", out.display());
    let manifest = io::manifest_json("sweep", params.entries(), table.notes());
    let manifest_path = io::manifest_path_for(&out);
    io::write_text(&manifest_path, &manifest)?;
    note(quiet, &format!("wrote {}", manifest_path.display()));

    let failures: Vec<_> = table.failures().collect();
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &failures {
            eprintln!(
                "sweep row failed at omega0*sigma = {}, tau/sigma = {}: {}",
                f.omega0_sigma,
                delay_field(f.tau_over_sigma),
                f.message
            );
        }
        eprintln!("{} of {} rows failed; see NaN rows in the CSV", failures.len(), table.rows().len());
        Ok(ExitCode::from(2))
    }
}

/// The spectral front of the pipeline shared by `state`, `density`, `modes`:
/// truncated-Gaussian pulse -> accurate spectrum on the working grid.
fn pulse_spectrum(omega_sigma: f64, delay: DelaySpec, grid_points: Option<usize>) -> Result<Spectrum> {
    let tau = match delay {
        DelaySpec::Finite(v) => v,
        DelaySpec::Infinite => INFINITE_DELAY_EMULATION,
    };
    let params = TruncatedGaussianParams::new(omega_sigma, 1.0, tau)?;
    let pulse = make_truncated_gaussian(params)?;
    let grid = match grid_points {
        Some(n) => FrequencyGrid::new(omega_sigma + 12.0, n)?,
        None => FrequencyGrid::default_for(omega_sigma, 1.0),
    };
    let spectrum = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm)?;
    spectrum.require_accuracy()?;
    Ok(spectrum)
}

struct PulseScalars {
    omega_sigma: f64,
    delay: DelaySpec,
    grid_points: Option<usize>,
}

fn resolve_pulse(
    omega_flag: Option<f64>,
    tau_flag: Option<&str>,
    grid_flag: Option<usize>,
    config: &ConfigMap,
) -> Result<PulseScalars> {
    let omega_sigma = pick(omega_flag, config, "omega-sigma", parse_f64, 1.0)?;
    let delay_flag = tau_flag.map(parse_delay).transpose()?;
    let delay = pick(delay_flag, config, "tau-ratio", parse_delay, DelaySpec::Finite(3.0))?;
    let grid_points = pick_opt(grid_flag, config, "grid-points", parse_usize)?;
    Ok(PulseScalars { omega_sigma, delay, grid_points })
}

fn record_pulse(params: &mut ResolvedParams, scalars: &PulseScalars) {
    params.record("omega_sigma", scalars.omega_sigma);
    params.record("tau_ratio", delay_field(scalars.delay));
    params.record("grid_points", opt_field(scalars.grid_points));
}

fn build_state(eta_tilde: f64, ncut: Option<usize>) -> Result<LocalizedStateVector> {
    let trunc = ncut.map(FockTruncation::new).transpose()?;
    localized_state(eta_tilde, trunc)
}

fn run_state(args: &StateArgs, config: &ConfigMap, quiet: bool) -> Result<ExitCode> {
    let scalars = resolve_pulse(args.omega_sigma, args.tau_ratio.as_deref(), args.grid_points, config)?;
    let ncut = pick_opt(args.ncut, config, "ncut", parse_usize)?;
    let out = pick(
        args.out.clone(),
        config,
        "out",
        |s| Ok(PathBuf::from(s)),
        PathBuf::from("state.json"),
    )?;

    let spectrum = pulse_spectrum(scalars.omega_sigma, scalars.delay, scalars.grid_points)?;
    let ms = orthogonalize(&spectrum)?;
    let eta_tilde = ms.eta_tilde();
    let state = build_state(eta_tilde, ncut)?;
    let c = ((1.0 - eta_tilde) / eta_tilde).sqrt();
    let json = io::pipeline_state_json(
        scalars.omega_sigma,
        &delay_field(scalars.delay),
        spectrum.eta(),
        c,
        &state,
    );
    io::write_text(&out, &json)?;
    note(quiet, &format!("wrote {}", out.display()));

    let mut params = ResolvedParams::default();
    record_pulse(&mut params, &scalars);
    params.record("ncut", opt_field(ncut));
    params.record("out", out.display());
    let manifest_path = io::manifest_path_for(&out);
    io::write_text(&manifest_path, &io::manifest_json("state", params.entries(), &[]))?;
    note(quiet, &format!("wrote {}", manifest_path.display()));
    Ok(ExitCode::SUCCESS)
}

fn pair_of(spectrum: &Spectrum) -> Result<PulseModePair> {
    extract_modes(&orthogonalize(spectrum)?)
}

/// The second mode's field kernel is weakly singular exactly at `t = 0`;
/// plot grids skip that single sample instead of failing the whole run.
fn drop_time_zero(mut times: Vec<f64>, quiet: bool) -> Result<Vec<f64>> {
    let before = times.len();
    times.retain(|t| t.abs() > 1e-9);
    if times.len() != before {
        note(quiet, "skipped t = 0 (field kernel is weakly singular there)");
    }
    if times.is_empty() {
        return Err(Error::InvalidParameter("time grid has no usable samples".to_string()));
    }
    Ok(times)
}

fn run_density(args: &DensityArgs, config: &ConfigMap, quiet: bool) -> Result<ExitCode> {
    let scalars = resolve_pulse(args.omega_sigma, args.tau_ratio.as_deref(), args.grid_points, config)?;
    let alpha = pick(args.alpha, config, "alpha", parse_f64, 1.0)?;
    let ncut = pick_opt(args.ncut, config, "ncut", parse_usize)?;
    let times_flag = args.times.as_deref().map(parse_time_grid).transpose()?;
    let times = pick(times_flag, config, "times", parse_time_grid, parse_time_grid("-10:10:0.05")?)?;
    let times = drop_time_zero(times, quiet)?;
    let out_dir = pick(
        args.out_dir.clone(),
        config,
        "out-dir",
        |s| Ok(PathBuf::from(s)),
        PathBuf::from("density_out"),
    )?;

    let spectrum = pulse_spectrum(scalars.omega_sigma, scalars.delay, scalars.grid_points)?;
    let pair = pair_of(&spectrum)?;
    let (e1, e2) = pair_field_profiles(&pair, &times)?;
    let state = build_state(pair.eta_tilde, ncut)?;

    let localized = energy_density_state(&state, &e1, &e2)?;
    let single = energy_density_single_photon(&e1);
    let coherent_params = CoherentParams::new(Complex64::new(alpha, 0.0), coherent_localized_mode(&pair))?;
    let coherent = energy_density_coherent(&coherent_params, &times)?;
    let nonlocal = glauber_intensity(&state, &e1, &e2)?;

    for (name, series) in [
        ("density_localized.csv", &localized),
        ("density_single_photon.csv", &single),
        ("density_coherent.csv", &coherent),
        ("intensity_nonlocal.csv", &nonlocal),
    ] {
        let path = out_dir.join(name);
        io::write_text(&path, &io::density_csv(series))?;
        note(quiet, &format!("wrote {}", path.display()));
    }

    let mut params = ResolvedParams::default();
    record_pulse(&mut params, &scalars);
    params.record("alpha", alpha);
    params.record("ncut", opt_field(ncut));
    params.record("times", format!("{} samples in [{}, {}]", times.len(), times[0], times[times.len() - 1]));
    params.record("out_dir", out_dir.display());
    let manifest_path = out_dir.join("manifest.json");
    io::write_text(&manifest_path, &io::manifest_json("density", params.entries(), &[]))?;
    note(quiet, &format!("wrote {}", manifest_path.display()));
    Ok(ExitCode::SUCCESS)
}

fn run_modes(args: &ModesArgs, config: &ConfigMap, quiet: bool) -> Result<ExitCode> {
    let scalars = resolve_pulse(args.omega_sigma, args.tau_ratio.as_deref(), args.grid_points, config)?;
    let times_flag = args.times.as_deref().map(parse_time_grid).transpose()?;
    let times = pick(times_flag, config, "times", parse_time_grid, parse_time_grid("-10:10:0.05")?)?;
    let times = drop_time_zero(times, quiet)?;
    let out_dir = pick(
        args.out_dir.clone(),
        config,
        "out-dir",
        |s| Ok(PathBuf::from(s)),
        PathBuf::from("modes_out"),
    )?;

    let spectrum = pulse_spectrum(scalars.omega_sigma, scalars.delay, scalars.grid_points)?;
    let ms = orthogonalize(&spectrum)?;
    let pair = extract_modes(&ms)?;
    let (e1, e2) = pair_field_profiles(&pair, &times)?;

    let files: [(&str, String); 5] = [
        ("spectrum.csv", io::spectrum_csv(&spectrum)),
        ("modified_spectrum.csv", io::modified_spectrum_csv(&ms)),
        ("modes.csv", io::modes_csv(&pair)),
        ("profile_xi1.csv", io::profile_csv(&e1)),
        ("profile_xi2.csv", io::profile_csv(&e2)),
    ];
    for (name, content) in &files {
        let path = out_dir.join(name);
        io::write_text(&path, content)?;
        note(quiet, &format!("wrote {}", path.display()));
    }

    let mut params = ResolvedParams::default();
    record_pulse(&mut params, &scalars);
    params.record("times", format!("{} samples in [{}, {}]", times.len(), times[0], times[times.len() - 1]));
    params.record("out_dir", out_dir.display());
    let manifest_path = out_dir.join("manifest.json");
    io::write_text(&manifest_path, &io::manifest_json("modes", params.entries(), &[]))?;
    note(quiet, &format!("wrote {}", manifest_path.display()));
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs, config: &ConfigMap) -> Result<ExitCode> {
    if args.list {
        for (name, summary) in check_names() {
            report(format_args!("{name} — {summary}"));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let tol_scale = pick(args.tol_scale, config, "tol-scale", parse_f64, 1.0)?;
    let opts = VerifyOptions { tol_scale, inject_beta_plus: args.inject_beta_plus };
    let names: Option<Vec<String>> = args
        .only
        .as_deref()
        .map(|list| list.split(',').map(|s| s.trim().to_string()).collect());
    let outcomes = run_checks(names.as_deref(), &opts)?;
    let mut failed = 0usize;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        report(format_args!("{tag} {} — {}", o.name, o.detail));
        if !o.passed {
            failed += 1;
        }
    }
    report(format_args!(
        "{} of {} checks passed{}",
        outcomes.len() - failed,
        outcomes.len(),
        if args.inject_beta_plus { " (fault injection active)" } else { "" }
    ));
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
