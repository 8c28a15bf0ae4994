//! Normal-ordered energy densities for single-photon, coherent, and
//! two-mode localized states, plus the metrics that quantify how strictly a
//! state's field energy stays out of `t < 0`.
//!
//! All densities are expectation values of `:E^2(t):` in units of the squared
//! field kernel. The expansion over the pulse-mode pair reads
//! `<:E^2:> = <E+ E+> + <E- E-> + 2 <E- E+>` with
//! `E+(t) = E_1(t) a_1 + E_2(t) a_2` on the states built here (all higher
//! modes hold vacuum and drop out of normal-ordered averages).

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::fockspace::{apply_annihilator, FockTruncation, LocalizedStateVector};
use crate::modes::{field_profile, FieldProfile, ModeFunction, ModeKind, PulseModePair};

/// Which state a series was evaluated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    SinglePhoton,
    Coherent,
    LocalizedState,
    /// The intensity `<E-(t) E+(t)>`. This is not a local-in-time observable
    /// and does not vanish for `t < 0` even on strictly localized states; it
    /// is exposed only as a labeled diagnostic for contrast.
    GlauberIntensityNonlocal,
}

impl SeriesKind {
    /// Column label used in CSV exports.
    pub fn csv_label(self) -> &'static str {
        match self {
            SeriesKind::GlauberIntensityNonlocal => "intensity_nonlocal",
            _ => "density",
        }
    }
}

/// A real time series of `<:E^2(t):>` (or the labeled intensity diagnostic).
#[derive(Debug, Clone)]
pub struct QuadratureTimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
    kind: SeriesKind,
}

impl QuadratureTimeSeries {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Largest absolute value over the whole series.
    pub fn peak(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Drop imaginary parts after checking they are rounding-level; a complex
/// remainder above `1e-10` of the peak means the expectation assembly (or the
/// state fed into it) violated the reality symmetry and the series would be
/// meaningless.
fn realize(times: &[f64], complex_values: Vec<Complex64>, kind: SeriesKind) -> Result<QuadratureTimeSeries> {
    let peak = complex_values.iter().fold(0.0, |m: f64, v| m.max(v.norm()));
    let worst = complex_values.iter().fold(0.0, |m: f64, v| m.max(v.im.abs()));
    if worst > 1e-10 * peak {
        return Err(Error::Accuracy(format!(
            "density series has imaginary remainder {worst:.3e} against peak {peak:.3e}; \
             the expectation values are not real"
        )));
    }
    Ok(QuadratureTimeSeries {
        times: times.to_vec(),
        values: complex_values.iter().map(|v| v.re).collect(),
        kind,
    })
}

/// `<1|:E^2(t):|1> = 2 |E_1(t)|^2` for a single photon in the profiled mode.
pub fn energy_density_single_photon(profile: &FieldProfile) -> QuadratureTimeSeries {
    QuadratureTimeSeries {
        times: profile.times.clone(),
        values: profile.values.iter().map(|e| 2.0 * e.norm_sqr()).collect(),
        kind: SeriesKind::SinglePhoton,
    }
}

/// A coherent amplitude in a single unit-norm mode on `omega >= 0`.
///
/// The density evaluation extends the mode's spectrum to the full frequency
/// axis by the symmetric rule `F(-omega) = conj(F(omega))`, which makes the
/// two-sided field transform real; for a mode built by
/// [`coherent_localized_mode`](crate::modes::coherent_localized_mode) that
/// extension is also causal, so the classical pulse is strictly localized.
#[derive(Debug, Clone)]
pub struct CoherentParams {
    alpha: Complex64,
    mode: ModeFunction,
}

impl CoherentParams {
    pub fn new(alpha: Complex64, mode: ModeFunction) -> Result<Self> {
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(invalid!("coherent amplitude must be finite, got {alpha}"));
        }
        let norm2 = mode.norm2();
        if (norm2 - 1.0).abs() > 1e-8 {
            return Err(invalid!("coherent mode must be unit-norm; norm^2 = {norm2}"));
        }
        Ok(CoherentParams { alpha, mode })
    }

    /// Amplitude in the first pulse mode (the mode-matched reading used for
    /// fidelity baselines; its field is not localized).
    pub fn mode_matched(alpha: Complex64, pair: &PulseModePair) -> Result<Self> {
        Self::new(alpha, pair.xi1.clone())
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn mode(&self) -> &ModeFunction {
        &self.mode
    }
}

/// Classical energy density of a coherent state,
/// `(2 Re[alpha E_mode(t)])^2` per sample: the square of the real two-sided
/// field transform under the symmetric extension. Non-negative everywhere by
/// construction.
pub fn energy_density_coherent(params: &CoherentParams, times: &[f64]) -> Result<QuadratureTimeSeries> {
    let profile = field_profile(&params.mode, times)?;
    let values = profile
        .values
        .iter()
        .map(|e| {
            let re = 2.0 * (params.alpha * e).re;
            re * re
        })
        .collect();
    Ok(QuadratureTimeSeries { times: times.to_vec(), values, kind: SeriesKind::Coherent })
}

/// Quadratic expectation values of a real two-mode state vector.
struct ModeExpectations {
    /// `<a_m a_n>` for `m, n` in `{1, 2}` (symmetric).
    pair: [[f64; 2]; 2],
    /// `<a_m' a_n>` (symmetric because the coefficients are real).
    number: [[f64; 2]; 2],
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mode_expectations(trunc: FockTruncation, coeffs: &[f64]) -> ModeExpectations {
    let lowered = [apply_annihilator(trunc, 1, coeffs), apply_annihilator(trunc, 2, coeffs)];
    let mut pair = [[0.0; 2]; 2];
    let mut number = [[0.0; 2]; 2];
    for m in 0..2 {
        for n in 0..2 {
            // <a_m a_n> = <psi, a_m (a_n psi)>: annihilators act exactly on
            // the truncated space, so no edge correction is needed.
            pair[m][n] = dot(coeffs, &apply_annihilator(trunc, m + 1, &lowered[n]));
            number[m][n] = dot(&lowered[m], &lowered[n]);
        }
    }
    ModeExpectations { pair, number }
}

fn check_provenance(
    state: &LocalizedStateVector,
    e1: &FieldProfile,
    e2: &FieldProfile,
) -> Result<()> {
    if e1.source != ModeKind::Xi1 || e2.source != ModeKind::Xi2 {
        return Err(invalid!(
            "state density needs the profiles of xi1 and xi2 in that order, got {:?} and {:?}",
            e1.source,
            e2.source
        ));
    }
    for (name, profile) in [("xi1", e1), ("xi2", e2)] {
        match profile.eta_tilde {
            Some(fraction) if (fraction - state.eta_tilde()).abs() <= 1e-12 => {}
            Some(fraction) => {
                return Err(invalid!(
                    "{name} profile comes from fraction {fraction} but the state was built at {}",
                    state.eta_tilde()
                ));
            }
            None => return Err(invalid!("{name} profile carries no fraction tag")),
        }
    }
    if e1.times != e2.times {
        return Err(invalid!("mode profiles must share one time grid"));
    }
    Ok(())
}

/// `<:E^2(t):>` of a two-mode state over the profiled mode pair.
///
/// The profiles must be the tagged pair produced by
/// [`pair_field_profiles`](crate::modes::pair_field_profiles) from the same
/// construction as the state; mismatched provenance is a parameter error.
pub fn energy_density_state(
    state: &LocalizedStateVector,
    e1: &FieldProfile,
    e2: &FieldProfile,
) -> Result<QuadratureTimeSeries> {
    check_provenance(state, e1, e2)?;
    density_from_coeffs(state.trunc(), state.coeffs(), &e1.times, &e1.values, &e2.values)
}

pub(crate) fn density_from_coeffs(
    trunc: FockTruncation,
    coeffs: &[f64],
    times: &[f64],
    e1: &[Complex64],
    e2: &[Complex64],
) -> Result<QuadratureTimeSeries> {
    let ex = mode_expectations(trunc, coeffs);
    let values: Vec<Complex64> = times
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let e = [e1[i], e2[i]];
            let mut total = Complex64::default();
            for m in 0..2 {
                for n in 0..2 {
                    let up = e[m] * e[n] * ex.pair[m][n];
                    total += up + up.conj() + 2.0 * e[m].conj() * e[n] * ex.number[m][n];
                }
            }
            total
        })
        .collect();
    realize(times, values, SeriesKind::LocalizedState)
}

/// Normal-ordered two-point function `<:E(t_a) E(t_b):>` of the state,
/// evaluated at two samples of the shared profile grid. Its diagonal
/// `t_b = t_a` is the energy density.
pub fn two_point_density(
    state: &LocalizedStateVector,
    e1: &FieldProfile,
    e2: &FieldProfile,
    a: usize,
    b: usize,
) -> Result<f64> {
    check_provenance(state, e1, e2)?;
    let n = e1.times.len();
    if a >= n || b >= n {
        return Err(invalid!("two-point sample indices ({a}, {b}) outside the {n}-sample grid"));
    }
    let ex = mode_expectations(state.trunc(), state.coeffs());
    let ea = [e1.values[a], e2.values[a]];
    let eb = [e1.values[b], e2.values[b]];
    let mut total = Complex64::default();
    let mut scale = 0.0f64;
    for m in 0..2 {
        for n in 0..2 {
            let up = ea[m] * eb[n] * ex.pair[m][n];
            let down = ea[m].conj() * eb[n] * ex.number[m][n] + eb[m].conj() * ea[n] * ex.number[m][n];
            total += up + up.conj() + down;
            scale += 2.0 * up.norm() + down.norm();
        }
    }
    if total.im.abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Accuracy(format!(
            "two-point value has imaginary remainder {:.3e}; expectation assembly is inconsistent",
            total.im
        )));
    }
    Ok(total.re)
}

/// The intensity diagnostic `<E-(t) E+(t)>`, labeled nonlocal: unlike the
/// energy density it mixes positive and negative frequencies nonlocally in
/// time and stays finite for `t < 0` on strictly localized states, which is
/// exactly why it is not used as a localization witness.
pub fn glauber_intensity(
    state: &LocalizedStateVector,
    e1: &FieldProfile,
    e2: &FieldProfile,
) -> Result<QuadratureTimeSeries> {
    check_provenance(state, e1, e2)?;
    let ex = mode_expectations(state.trunc(), state.coeffs());
    let values: Vec<Complex64> = (0..e1.times.len())
        .map(|i| {
            let e = [e1.values[i], e2.values[i]];
            let mut total = Complex64::default();
            for m in 0..2 {
                for n in 0..2 {
                    total += e[m].conj() * e[n] * ex.number[m][n];
                }
            }
            total
        })
        .collect();
    realize(&e1.times, values, SeriesKind::GlauberIntensityNonlocal)
}

/// Supremum of `|series|` over the samples in `window = (t_lo, t_hi)`,
/// normalized by the global peak: the fraction of the state's energy-density
/// scale that spills below `t = 0`.
///
/// The window must be strictly negative (`t_hi < 0`) and contain at least one
/// sample; a series that is zero everywhere scores 0.
pub fn localization_metric(series: &QuadratureTimeSeries, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo < hi && hi < 0.0) {
        return Err(invalid!(
            "localization window ({lo}, {hi}) must be ordered and strictly below t = 0"
        ));
    }
    let mut sup: Option<f64> = None;
    for (t, v) in series.times.iter().zip(&series.values) {
        if (lo..=hi).contains(t) {
            sup = Some(sup.unwrap_or(0.0).max(v.abs()));
        }
    }
    let Some(sup) = sup else {
        return Err(invalid!("localization window ({lo}, {hi}) contains no samples"));
    };
    let peak = series.peak();
    if peak == 0.0 {
        return Ok(0.0);
    }
    Ok(sup / peak)
}
