//! Fidelity bounds for on-demand single-photon approximations and the
//! parameter sweeps that map them over pulse families.
//!
//! For a desired causal pulse with negative-frequency fraction `eta`, the
//! best achievable overlap `F_max` with any physical (positive-frequency)
//! state is pinned between `F sqrt(1 - eta)` (achieved by the two-mode
//! localized construction with Fock fidelity `F`) and `sqrt(1 - eta)`
//! (Cauchy-Schwarz). To first order in `eta` these read `1 - 0.59 eta` and
//! `1 - 0.5 eta`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::fockspace::{fidelity_single_photon, localized_state, FockTruncation};
use crate::grid::FrequencyGrid;
use crate::modes::orthogonalize;
use crate::spectral::{
    eta_infinite_delay, make_truncated_gaussian, spectrum_of, SpectrumMethod,
    TruncatedGaussianParams,
};

/// First-order coefficient of the Fock fidelity, `(3 - 2 sqrt(2)) / 2`:
/// `F = 1 - 0.0857864 eta~ + O(eta~^2)`.
pub const FIDELITY_SLOPE: f64 = 0.085_786_437_626_904_95;

/// Largest fraction for which the first-order fidelity form is an adequate
/// stand-in for the exact Fock value; rows beyond it carry a validity flag.
pub const PERTURBATIVE_ETA_LIMIT: f64 = 0.09;

/// Fractions closer to `1/2` than this are treated as degenerate in sweeps:
/// the bounds collapse to `sqrt(1/2)` from both sides and the modified-pulse
/// construction loses its meaning there.
pub const ETA_DEGENERACY_MARGIN: f64 = 1e-9;

/// The two-sided bound on `F_max` at a given fraction.
#[derive(Debug, Clone, Copy)]
pub struct FidelityBounds {
    /// `F sqrt(1 - eta)`, from the explicit two-mode construction.
    pub lower: f64,
    /// `sqrt(1 - eta)`, from Cauchy-Schwarz.
    pub upper: f64,
    /// False when the lower bound had to fall back to the first-order form
    /// outside its trusted range (`eta > 0.09` with no exact fidelity given).
    pub perturbative_valid: bool,
}

/// Bounds on the best single-photon fidelity at fraction `eta`.
///
/// When the exact Fock fidelity of the constructed state is supplied it
/// scales the lower bound; otherwise the first-order form
/// `(1 - 0.0857864 eta) sqrt(1 - eta)` is used and flagged when `eta` is
/// outside its trusted range.
pub fn fmax_bounds(eta: f64, f_exact: Option<f64>) -> Result<FidelityBounds> {
    if !(0.0..0.5).contains(&eta) {
        return Err(invalid!("fraction must lie in [0, 1/2), got {eta}"));
    }
    let upper = (1.0 - eta).sqrt();
    let (lower, perturbative_valid) = match f_exact {
        Some(f) => {
            if !(0.0..=1.0).contains(&f) {
                return Err(invalid!("exact fidelity must lie in [0, 1], got {f}"));
            }
            (f * upper, true)
        }
        None => ((1.0 - FIDELITY_SLOPE * eta) * upper, eta <= PERTURBATIVE_ETA_LIMIT),
    };
    Ok(FidelityBounds { lower, upper, perturbative_valid })
}

/// Overlap of the desired single photon with a coherent state of amplitude
/// `alpha` in the mode-matched positive-frequency mode:
/// `|alpha| e^{-|alpha|^2 / 2} sqrt(1 - eta)`. Maximized over `alpha` at
/// `|alpha| = 1`, where it approaches `1 / sqrt(e)` as `eta -> 0`.
pub fn coherent_fidelity(alpha: Complex64, eta: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&eta) {
        return Err(invalid!("fraction must lie in [0, 1/2), got {eta}"));
    }
    let a = alpha.norm();
    Ok(a * (-0.5 * a * a).exp() * (1.0 - eta).sqrt())
}

/// Pulse delay in a sweep: a finite `tau / sigma` ratio or the analytic
/// infinite-delay limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DelaySpec {
    Finite(f64),
    Infinite,
}

impl DelaySpec {
    /// CSV rendering of the `tau_over_sigma` column.
    pub fn csv_field(self) -> String {
        match self {
            DelaySpec::Finite(v) => format!("{v:.12e}"),
            DelaySpec::Infinite => "inf".to_string(),
        }
    }

    fn sort_key(self) -> f64 {
        match self {
            DelaySpec::Finite(v) => v,
            DelaySpec::Infinite => f64::INFINITY,
        }
    }
}

/// One successful sweep row.
#[derive(Debug, Clone)]
pub struct BoundsPoint {
    pub omega0_sigma: f64,
    pub tau_over_sigma: DelaySpec,
    /// Negative-frequency fraction of the desired pulse.
    pub eta: f64,
    pub f_upper: f64,
    /// First-order lower bound `(1 - 0.0857864 eta) sqrt(1 - eta)`.
    pub f_lower_pert: f64,
    /// `F sqrt(1 - eta)` with the exact Fock fidelity; `None` when the sweep
    /// ran without the Fock pipeline or the truncation ceiling was hit.
    pub f_lower_exact: Option<f64>,
    /// The exact Fock fidelity itself, when computed.
    pub f_exact_state: Option<f64>,
    pub f_coherent: f64,
    /// False when `eta` sits outside the trusted first-order range.
    pub perturbative_valid: bool,
}

/// A sweep row that failed; sweeps continue past failures and report them.
#[derive(Debug, Clone)]
pub struct SweepFailure {
    pub omega0_sigma: f64,
    pub tau_over_sigma: DelaySpec,
    pub message: String,
}

/// Row of a sweep table: a bounds point or a recorded failure.
#[derive(Debug, Clone)]
pub enum SweepRow {
    Point(BoundsPoint),
    Failure(SweepFailure),
}

/// Ordered sweep output plus non-fatal notes (for the run manifest).
#[derive(Debug, Clone)]
pub struct SweepTable {
    rows: Vec<SweepRow>,
    notes: Vec<String>,
}

pub const SWEEP_CSV_HEADER: &str = "omega0_sigma,tau_over_sigma,eta,one_minus_f_upper,\
one_minus_f_lower_pert,one_minus_f_lower_exact,one_minus_f_coherent";

fn sci(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.12e}")
    }
}

impl SweepTable {
    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    pub fn points(&self) -> impl Iterator<Item = &BoundsPoint> {
        self.rows.iter().filter_map(|r| match r {
            SweepRow::Point(p) => Some(p),
            SweepRow::Failure(_) => None,
        })
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepFailure> {
        self.rows.iter().filter_map(|r| match r {
            SweepRow::Failure(f) => Some(f),
            SweepRow::Point(_) => None,
        })
    }

    /// Notes attached during the sweep (for example truncation-ceiling rows
    /// whose exact column was left empty); destined for the run manifest.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Deterministic CSV rendering. Failure rows keep their coordinates and
    /// carry `NaN` in every value column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let line = match row {
                SweepRow::Point(p) => format!(
                    "{},{},{},{},{},{},{}",
                    sci(p.omega0_sigma),
                    p.tau_over_sigma.csv_field(),
                    sci(p.eta),
                    sci(1.0 - p.f_upper),
                    sci(1.0 - p.f_lower_pert),
                    sci(p.f_lower_exact.map_or(f64::NAN, |f| 1.0 - f)),
                    sci(1.0 - p.f_coherent),
                ),
                SweepRow::Failure(f) => format!(
                    "{},{},NaN,NaN,NaN,NaN,NaN",
                    sci(f.omega0_sigma),
                    f.tau_over_sigma.csv_field(),
                ),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Sweep parameters; `omega0 sigma` runs over `start..=stop` in `step`
/// increments against every delay in `delays`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub omega_start: f64,
    pub omega_stop: f64,
    pub omega_step: f64,
    pub delays: Vec<DelaySpec>,
    /// Amplitude for the coherent baseline column.
    pub alpha: Complex64,
    /// Run the Fock pipeline per row for the exact lower bound.
    pub exact: bool,
    /// Frequency-grid override (odd sample count); `None` uses the pulse's
    /// default grid.
    pub grid_points: Option<usize>,
    /// Truncation override for the exact pipeline.
    pub n_cut: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            omega_start: 0.2,
            omega_stop: 3.0,
            omega_step: 0.1,
            delays: vec![DelaySpec::Finite(3.0)],
            alpha: Complex64::new(1.0, 0.0),
            exact: false,
            grid_points: None,
            n_cut: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_start.is_finite() && self.omega_start > 0.0) {
            return Err(invalid!("sweep start must be positive, got {}", self.omega_start));
        }
        if !(self.omega_step.is_finite() && self.omega_step > 0.0) {
            return Err(invalid!("sweep step must be positive, got {}", self.omega_step));
        }
        if !(self.omega_stop.is_finite() && self.omega_stop >= self.omega_start) {
            return Err(invalid!(
                "sweep stop {} must not precede start {}",
                self.omega_stop,
                self.omega_start
            ));
        }
        if self.delays.is_empty() {
            return Err(invalid!("sweep needs at least one delay value"));
        }
        for d in &self.delays {
            if let DelaySpec::Finite(v) = d {
                if !(v.is_finite() && *v >= 0.0) {
                    return Err(invalid!("delay ratio must be finite and non-negative, got {v}"));
                }
            }
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(invalid!("coherent amplitude must be finite"));
        }
        Ok(())
    }

    /// The swept carrier values, inclusive of the endpoint up to rounding.
    pub fn omega_values(&self) -> Vec<f64> {
        let count = ((self.omega_stop - self.omega_start) / self.omega_step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.omega_start + i as f64 * self.omega_step).collect()
    }
}

/// Pulses are evaluated in `sigma = 1` units: `omega0 sigma` and `tau / sigma`
/// fix everything up to overall scale. Infinite delay is emulated with
/// `tau / sigma = 8` for the Fock pipeline (indistinguishable at the 1e-4
/// level), while its `eta` column comes from the closed form.
pub const INFINITE_DELAY_EMULATION: f64 = 8.0;

fn sweep_point(config: &SweepConfig, omega0_sigma: f64, delay: DelaySpec) -> Result<(BoundsPoint, Option<String>)> {
    let tau = match delay {
        DelaySpec::Finite(v) => v,
        DelaySpec::Infinite => INFINITE_DELAY_EMULATION,
    };
    let params = TruncatedGaussianParams::new(omega0_sigma, 1.0, tau)?;
    let pulse = make_truncated_gaussian(params)?;
    let grid = match config.grid_points {
        Some(n) => FrequencyGrid::new(omega0_sigma + 12.0, n)?,
        None => FrequencyGrid::default_for(omega0_sigma, 1.0),
    };
    let spectrum = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm)?;
    spectrum.require_accuracy()?;

    let eta = match delay {
        DelaySpec::Finite(_) => spectrum.eta(),
        DelaySpec::Infinite => eta_infinite_delay(omega0_sigma)?,
    };
    if eta >= 0.5 - ETA_DEGENERACY_MARGIN {
        return Err(Error::Degenerate(format!(
            "negative-frequency fraction {eta} is numerically indistinguishable from 1/2"
        )));
    }

    let mut note = None;
    let (f_exact_state, f_lower_exact) = if config.exact {
        let modified = orthogonalize(&spectrum)?;
        let trunc = config.n_cut.map(FockTruncation::new).transpose()?;
        match localized_state(modified.eta_tilde(), trunc) {
            Ok(state) => {
                let f = fidelity_single_photon(&state);
                (Some(f), Some(f * (1.0 - eta).sqrt()))
            }
            Err(Error::Truncation(msg)) => {
                note = Some(format!(
                    "omega0_sigma={omega0_sigma}, tau={}: exact column omitted ({msg})",
                    delay.csv_field()
                ));
                (None, None)
            }
            Err(e) => return Err(e),
        }
    } else {
        (None, None)
    };

    let bounds = fmax_bounds(eta, None)?;
    let f_coherent = coherent_fidelity(config.alpha, eta)?;
    Ok((
        BoundsPoint {
            omega0_sigma,
            tau_over_sigma: delay,
            eta,
            f_upper: bounds.upper,
            f_lower_pert: bounds.lower,
            f_lower_exact,
            f_exact_state,
            f_coherent,
            perturbative_valid: bounds.perturbative_valid,
        },
        note,
    ))
}

/// Run the sweep. Rows are ordered by `omega0 sigma` ascending, then by delay
/// ascending with the infinite-delay rows last; failures become rows of their
/// own and do not abort the sweep. Points are evaluated in parallel.
pub fn sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let mut delays = config.delays.clone();
    delays.sort_by(|a, b| a.sort_key().total_cmp(&b.sort_key()));
    delays.dedup();

    let tasks: Vec<(f64, DelaySpec)> = config
        .omega_values()
        .into_iter()
        .flat_map(|w| delays.iter().map(move |&d| (w, d)))
        .collect();

    let results: Vec<(SweepRow, Option<String>)> = tasks
        .par_iter()
        .map(|&(w, d)| match sweep_point(config, w, d) {
            Ok((point, note)) => (SweepRow::Point(point), note),
            Err(e) => (
                SweepRow::Failure(SweepFailure {
                    omega0_sigma: w,
                    tau_over_sigma: d,
                    message: e.to_string(),
                }),
                None,
            ),
        })
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut notes = Vec::new();
    for (row, note) in results {
        rows.push(row);
        notes.extend(note);
    }
    Ok(SweepTable { rows, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bounds_at_zero_fraction_are_unity() {
        let b = fmax_bounds(0.0, None).unwrap();
        assert_eq!(b.upper, 1.0);
        assert_abs_diff_eq!(b.lower, 1.0, epsilon = 1e-15);
        assert!(b.perturbative_valid);
        assert!(fmax_bounds(0.5, None).is_err());
        assert!(fmax_bounds(-0.01, None).is_err());
        assert!(fmax_bounds(0.1, Some(1.5)).is_err());
    }

    #[test]
    fn bounds_match_the_arithmetic_at_one_percent() {
        // Upper bound against an independent evaluation of sqrt(0.99).
        let b = fmax_bounds(0.01, Some(0.99914)).unwrap();
        assert_abs_diff_eq!(b.upper, 0.994_987_437_106_62, epsilon = 1e-12);
        assert_abs_diff_eq!(b.lower, 0.99914 * 0.994_987_437_106_62, epsilon = 1e-12);
        assert_abs_diff_eq!(b.lower, 0.994_132, epsilon = 2e-6);
        assert!(b.perturbative_valid);
        // Outside the trusted first-order range the flag drops unless an
        // exact fidelity is supplied.
        assert!(!fmax_bounds(0.2, None).unwrap().perturbative_valid);
        assert!(fmax_bounds(0.2, Some(0.98)).unwrap().perturbative_valid);
    }

    /// Least-squares slope of y against x.
    fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let var: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
        cov / var
    }

    #[test]
    fn small_fraction_slopes_match_the_first_order_forms() {
        // Oracle: regression over eta in [1e-4, 1e-2] must recover the
        // first-order coefficients 0.5 (upper) and 0.5857864 (lower).
        let etas: Vec<f64> = (0..40).map(|i| 1e-4 + i as f64 * (1e-2 - 1e-4) / 39.0).collect();
        let upper: Vec<f64> = etas.iter().map(|&e| 1.0 - fmax_bounds(e, None).unwrap().upper).collect();
        let lower: Vec<f64> = etas.iter().map(|&e| 1.0 - fmax_bounds(e, None).unwrap().lower).collect();
        let s_upper = regression_slope(&etas, &upper);
        let s_lower = regression_slope(&etas, &lower);
        assert!((s_upper - 0.5).abs() <= 0.01, "upper slope {s_upper}");
        assert!((s_lower - (0.5 + FIDELITY_SLOPE)).abs() <= 0.01, "lower slope {s_lower}");
        assert_abs_diff_eq!(0.5 + FIDELITY_SLOPE, 0.585_786_437_626_905, epsilon = 1e-15);
    }

    #[test]
    fn coherent_fidelity_peaks_at_unit_amplitude() {
        assert_eq!(coherent_fidelity(Complex64::default(), 0.3).unwrap(), 0.0);
        // 1/sqrt(e) at zero fraction, independent of the amplitude's phase.
        let reference = (-0.5f64).exp();
        assert_abs_diff_eq!(
            coherent_fidelity(Complex64::new(1.0, 0.0), 0.0).unwrap(),
            reference,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            coherent_fidelity(Complex64::new(0.6, 0.8), 0.0).unwrap(),
            reference,
            epsilon = 1e-15
        );
        // |alpha| e^{-|alpha|^2/2} is maximized at |alpha| = 1.
        let at = |a: f64| coherent_fidelity(Complex64::new(a, 0.0), 0.1).unwrap();
        let peak = at(1.0);
        for a in [0.2, 0.5, 0.8, 0.99, 1.01, 1.3, 2.0, 3.0] {
            assert!(at(a) < peak, "amplitude {a} beats 1");
        }
        assert!(coherent_fidelity(Complex64::new(1.0, 0.0), 0.6).is_err());
    }

    #[test]
    fn config_validation_rejects_malformed_ranges() {
        let ok = SweepConfig::default();
        assert!(ok.validate().is_ok());
        assert_eq!(ok.omega_values().len(), 29);

        let mut bad = SweepConfig::default();
        bad.omega_step = -0.1;
        assert!(bad.validate().is_err());
        let mut bad = SweepConfig::default();
        bad.omega_start = 0.0;
        assert!(bad.validate().is_err());
        let mut bad = SweepConfig::default();
        bad.omega_stop = 0.1;
        assert!(bad.validate().is_err());
        let mut bad = SweepConfig::default();
        bad.delays.clear();
        assert!(bad.validate().is_err());
        let mut bad = SweepConfig::default();
        bad.delays = vec![DelaySpec::Finite(-1.0)];
        assert!(bad.validate().is_err());
    }

    fn quick_config() -> SweepConfig {
        SweepConfig {
            omega_start: 0.4,
            omega_stop: 1.2,
            omega_step: 0.4,
            delays: vec![DelaySpec::Infinite, DelaySpec::Finite(3.0), DelaySpec::Finite(1.5)],
            alpha: Complex64::new(1.0, 0.0),
            exact: false,
            grid_points: Some(16385),
            n_cut: None,
        }
    }

    #[test]
    fn sweep_rows_are_ordered_and_satisfy_the_bound_ordering() {
        let table = sweep(&quick_config()).unwrap();
        assert_eq!(table.rows().len(), 9);
        assert_eq!(table.failures().count(), 0);
        let points: Vec<_> = table.points().collect();
        // Primary key omega ascending, secondary delay ascending with the
        // infinite rows last.
        for pair in points.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let key = |p: &BoundsPoint| (p.omega0_sigma, p.tau_over_sigma.sort_key());
            assert!(key(a) < key(b), "rows out of order: {:?} then {:?}", key(a), key(b));
        }
        for p in &points {
            assert_abs_diff_eq!(p.f_upper, (1.0 - p.eta).sqrt(), epsilon = 1e-15);
            assert!(p.f_lower_pert <= p.f_upper);
            assert!(p.f_coherent < p.f_lower_pert);
            assert!(p.f_lower_exact.is_none() && p.f_exact_state.is_none());
            // A shorter delay truncates more of the pulse: eta must drop
            // with the delay at fixed carrier.
            if let (DelaySpec::Finite(_), Some(prev)) = (
                p.tau_over_sigma,
                points.iter().find(|q| {
                    q.omega0_sigma == p.omega0_sigma
                        && q.tau_over_sigma.sort_key() < p.tau_over_sigma.sort_key()
                }),
            ) {
                assert!(prev.eta > p.eta, "eta must decrease with delay");
            }
        }
        // The finite tau = 8 emulation is not in this sweep, but the
        // infinite rows must match the closed form exactly.
        for p in points.iter().filter(|p| p.tau_over_sigma == DelaySpec::Infinite) {
            assert_eq!(p.eta, eta_infinite_delay(p.omega0_sigma).unwrap());
        }

        // Determinism: a second run renders byte-identical CSV.
        let again = sweep(&quick_config()).unwrap();
        assert_eq!(table.to_csv(), again.to_csv());
        let csv = table.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_CSV_HEADER);
        let first = lines.next().unwrap();
        assert!(first.starts_with("4.000000000000e-1,1.500000000000e0,"));
        assert!(first.ends_with(','.to_string().as_str()) == false);
        assert!(csv.contains(",NaN,"), "exact column must be NaN in a fast sweep");
    }

    #[test]
    fn exact_sweep_rows_tighten_the_lower_bound() {
        let mut config = quick_config();
        config.omega_start = 0.8;
        config.omega_stop = 1.2;
        config.omega_step = 0.4;
        config.delays = vec![DelaySpec::Finite(3.0), DelaySpec::Infinite];
        config.exact = true;
        let table = sweep(&config).unwrap();
        assert_eq!(table.failures().count(), 0);
        for p in table.points() {
            let exact = p.f_lower_exact.expect("exact sweep fills the exact column");
            let f = p.f_exact_state.unwrap();
            assert!(f > 0.9 && f < 1.0);
            assert!(exact <= p.f_upper + 1e-12);
            // Second-order slack: the exact bound may sit below the
            // first-order one by at most ~3 eta^2 at these fractions.
            assert!(exact >= p.f_lower_pert - 3.0 * p.eta * p.eta);
            assert!(p.f_coherent < exact);
        }
        // Finite tau = 3 sits within 5% of infinite delay at these carriers.
        let points: Vec<_> = table.points().collect();
        for w in [0.8, 1.2] {
            let finite = points
                .iter()
                .find(|p| (p.omega0_sigma - w).abs() < 1e-9 && p.tau_over_sigma != DelaySpec::Infinite)
                .unwrap();
            let infinite = points
                .iter()
                .find(|p| (p.omega0_sigma - w).abs() < 1e-9 && p.tau_over_sigma == DelaySpec::Infinite)
                .unwrap();
            assert!((finite.eta - infinite.eta).abs() / infinite.eta <= 0.05);
        }
    }

    #[test]
    fn near_degenerate_corner_becomes_a_failure_row_and_the_sweep_continues() {
        let mut config = quick_config();
        config.omega_start = 1e-9;
        config.omega_stop = 1.0 + 1e-9;
        config.omega_step = 1.0;
        config.delays = vec![DelaySpec::Finite(3.0)];
        let table = sweep(&config).unwrap();
        assert_eq!(table.rows().len(), 2);
        let failures: Vec<_> = table.failures().collect();
        assert_eq!(failures.len(), 1, "the eta -> 1/2 corner must fail");
        assert_eq!(failures[0].omega0_sigma, 1e-9);
        assert!(failures[0].message.contains("1/2"));
        assert_eq!(table.points().count(), 1);
        let csv = table.to_csv();
        assert!(csv.lines().nth(1).unwrap().ends_with("NaN,NaN,NaN,NaN,NaN"));
    }

    #[test]
    fn finite_delay_eta_converges_to_the_infinite_limit() {
        // tau / sigma = 8 is numerically at the closed-form curve.
        let params = TruncatedGaussianParams::new(1.0, 1.0, 8.0).unwrap();
        let pulse = make_truncated_gaussian(params).unwrap();
        let grid = FrequencyGrid::default_for(1.0, 1.0);
        let spectrum = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm).unwrap();
        let limit = eta_infinite_delay(1.0).unwrap();
        assert!((spectrum.eta() - limit).abs() <= 1e-4);
    }
}
