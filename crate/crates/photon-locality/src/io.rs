//! Deterministic flat-file artifacts: CSV tables, the state JSON, and the
//! run manifest.
//!
//! Every data file is rendered to a `String` first (so formats are testable
//! without touching the filesystem) and uses fixed `%.12e` formatting with
//! `\n` line endings, giving byte-identical output for identical inputs. The
//! manifest is the one artifact carrying a timestamp.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fockspace::{fidelity_single_photon, LocalizedStateVector};
use crate::modes::{FieldProfile, ModifiedSpectrum, PulseModePair};
use crate::observables::QuadratureTimeSeries;
use crate::spectral::Spectrum;

/// Fixed scientific rendering used by every CSV column.
pub fn sci(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.12e}")
    }
}

/// `omega,re_G,im_G` over the spectrum's frequency grid.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    complex_columns_csv("omega,re_G,im_G", &spectrum.grid().omegas(), spectrum.values())
}

/// The modified spectrum in the same `omega,re_G,im_G` layout.
pub fn modified_spectrum_csv(ms: &ModifiedSpectrum) -> String {
    complex_columns_csv("omega,re_G,im_G", &ms.grid().omegas(), ms.values())
}

fn complex_columns_csv(header: &str, xs: &[f64], values: &[num_complex::Complex64]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for (x, v) in xs.iter().zip(values) {
        out.push_str(&format!("{},{},{}\n", sci(*x), sci(v.re), sci(v.im)));
    }
    out
}

/// `omega,re_xi1,im_xi1,re_xi2,im_xi2` for the orthonormal mode pair.
pub fn modes_csv(pair: &PulseModePair) -> String {
    let mut out = String::from("omega,re_xi1,im_xi1,re_xi2,im_xi2\n");
    for ((w, a), b) in pair.xi1.omegas().iter().zip(pair.xi1.values()).zip(pair.xi2.values()) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sci(*w),
            sci(a.re),
            sci(a.im),
            sci(b.re),
            sci(b.im)
        ));
    }
    out
}

/// `t,re_E,im_E,abs2_E` for an analytic-signal field profile.
pub fn profile_csv(profile: &FieldProfile) -> String {
    let mut out = String::from("t,re_E,im_E,abs2_E\n");
    for (t, e) in profile.times.iter().zip(&profile.values) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            sci(*t),
            sci(e.re),
            sci(e.im),
            sci(e.norm_sqr())
        ));
    }
    out
}

/// `t,density` (or `t,intensity_nonlocal` for the labeled diagnostic).
pub fn density_csv(series: &QuadratureTimeSeries) -> String {
    let mut out = format!("t,{}\n", series.kind().csv_label());
    for (t, v) in series.times().iter().zip(series.values()) {
        out.push_str(&format!("{},{}\n", sci(*t), sci(*v)));
    }
    out
}

#[derive(Serialize)]
struct PipelineStateJson<'a> {
    omega0_sigma: f64,
    tau_over_sigma: &'a str,
    eta: f64,
    eta_tilde: f64,
    c: f64,
    gamma: f64,
    fidelity: f64,
    n_cut: usize,
    ladder: Vec<LadderJson>,
    photon_number_probs: Vec<f64>,
}

#[derive(Serialize)]
struct LadderJson {
    n: usize,
    re: f64,
    im: f64,
}

/// The `state` subcommand's JSON: the interchange schema of
/// [`LocalizedStateVector`] (`eta_tilde`, `gamma`, `n_cut`, `ladder`,
/// `photon_number_probs`) plus the pipeline context (`eta`, `c`, `fidelity`
/// and the pulse parameters). [`LocalizedStateVector::from_json_str`] ignores
/// the extra fields, so the output reloads exactly.
pub fn pipeline_state_json(
    omega0_sigma: f64,
    tau_field: &str,
    eta: f64,
    c: f64,
    state: &LocalizedStateVector,
) -> String {
    let json = PipelineStateJson {
        omega0_sigma,
        tau_over_sigma: tau_field,
        eta,
        eta_tilde: state.eta_tilde(),
        c,
        gamma: state.gamma(),
        fidelity: fidelity_single_photon(state),
        n_cut: state.n_cut(),
        ladder: state
            .ladder()
            .iter()
            .enumerate()
            .map(|(i, &re)| LadderJson { n: i + 1, re, im: 0.0 })
            .collect(),
        photon_number_probs: state.photon_number_probs(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("state serialization cannot fail");
    s.push('\n');
    s
}

/// Write UTF-8 text, mapping failures to I/O errors that name the path.
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    let with_path = |action: &str, target: &Path, e: std::io::Error| {
        Error::Io(std::io::Error::new(e.kind(), format!("{action} {}: {e}", target.display())))
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| with_path("creating", parent, e))?;
        }
    }
    std::fs::write(path, content).map_err(|e| with_path("writing", path, e))
}

#[derive(Serialize)]
struct ManifestJson<'a> {
    command: &'a str,
    library_version: &'a str,
    generated_unix_seconds: u64,
    parameters: &'a BTreeMap<String, String>,
    notes: &'a [String],
}

/// Render the run manifest: the resolved parameters, library version, any
/// run notes, and the run's only timestamp.
pub fn manifest_json(command: &str, parameters: &BTreeMap<String, String>, notes: &[String]) -> String {
    let seconds = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let json = ManifestJson {
        command,
        library_version: env!("CARGO_PKG_VERSION"),
        generated_unix_seconds: seconds,
        parameters,
        notes,
    };
    let mut s = serde_json::to_string_pretty(&json).expect("manifest serialization cannot fail");
    s.push('\n');
    s
}

/// The manifest path for a single-file artifact: `fig3.csv` gets
/// `fig3.manifest.json` alongside it.
pub fn manifest_path_for(out: &Path) -> std::path::PathBuf {
    out.with_extension("manifest.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::localized_state;
    use crate::grid::FrequencyGrid;
    use crate::modes::{extract_modes, orthogonalize, pair_field_profiles};
    use crate::observables::energy_density_single_photon;
    use crate::spectral::{
        make_truncated_gaussian, spectrum_of, SpectrumMethod, TruncatedGaussianParams,
    };

    fn small_pipeline() -> (Spectrum, ModifiedSpectrum, PulseModePair) {
        let params = TruncatedGaussianParams::new(1.0, 1.0, 3.0).unwrap();
        let pulse = make_truncated_gaussian(params).unwrap();
        let grid = FrequencyGrid::new(13.0, 257).unwrap();
        let s = spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm).unwrap();
        let ms = orthogonalize(&s).unwrap();
        let pair = extract_modes(&ms).unwrap();
        (s, ms, pair)
    }

    #[test]
    fn csv_layouts_match_their_headers_and_are_deterministic() {
        let (s, ms, pair) = small_pipeline();
        let spec_csv = spectrum_csv(&s);
        let mut lines = spec_csv.lines();
        assert_eq!(lines.next(), Some("omega,re_G,im_G"));
        assert_eq!(spec_csv.lines().count(), 258);
        assert!(spec_csv.lines().skip(1).all(|l| l.split(',').count() == 3));
        assert_eq!(spectrum_csv(&s), spec_csv);

        assert!(modified_spectrum_csv(&ms).starts_with("omega,re_G,im_G\n"));

        let m_csv = modes_csv(&pair);
        assert!(m_csv.starts_with("omega,re_xi1,im_xi1,re_xi2,im_xi2\n"));
        assert!(m_csv.lines().skip(1).all(|l| l.split(',').count() == 5));

        let times = [-2.0, -1.0, 1.0, 2.0];
        let (e1, _) = pair_field_profiles(&pair, &times).unwrap();
        let p_csv = profile_csv(&e1);
        assert!(p_csv.starts_with("t,re_E,im_E,abs2_E\n"));
        assert_eq!(p_csv.lines().count(), 5);

        let d_csv = density_csv(&energy_density_single_photon(&e1));
        assert!(d_csv.starts_with("t,density\n"));
        // Densities of a single photon are 2|E|^2: all non-negative.
        for line in d_csv.lines().skip(1) {
            let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(v >= 0.0);
        }
    }

    #[test]
    fn pipeline_state_json_reloads_through_the_interchange_schema() {
        let state = localized_state(0.07, None).unwrap();
        let text = pipeline_state_json(1.0, "3", 0.08, 3.0, &state);
        assert!(text.contains("\"fidelity\""));
        assert!(text.contains("\"tau_over_sigma\": \"3\""));
        let back = LocalizedStateVector::from_json_str(&text).unwrap();
        assert_eq!(back.eta_tilde(), state.eta_tilde());
        assert_eq!(back.ladder(), state.ladder());
    }

    #[test]
    fn manifest_carries_version_parameters_and_notes() {
        let mut params = BTreeMap::new();
        params.insert("alpha".to_string(), "1".to_string());
        let text = manifest_json("sweep", &params, &["note one".to_string()]);
        assert!(text.contains("\"command\": \"sweep\""));
        assert!(text.contains("\"library_version\""));
        assert!(text.contains("\"generated_unix_seconds\""));
        assert!(text.contains("\"alpha\": \"1\""));
        assert!(text.contains("note one"));
        assert_eq!(
            manifest_path_for(Path::new("out/fig3.csv")),
            Path::new("out/fig3.manifest.json")
        );
    }
}
