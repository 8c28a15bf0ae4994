//! Acceptance gate: eight go/no-go criteria covering the full pipeline, from
//! the closed-form infinite-delay law to the truncated-operator identities.
//!
//! Each criterion prints exactly one `PASS`/`FAIL` line with its measured
//! numbers (visible with `cargo test --test acceptance -- --nocapture`) and
//! fails its test if the bar is not met. Criteria with an explicit runtime
//! budget also fail when they blow it.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use photon_locality::bounds::{
    self, coherent_fidelity, DelaySpec, SweepConfig, SweepTable, FIDELITY_SLOPE,
};
use photon_locality::fockspace::{
    fidelity_single_photon, localized_state, squeeze_operator, squeeze_transform_residual,
    tmsv_ladder, FockTruncation,
};
use photon_locality::grid::FrequencyGrid;
use photon_locality::linalg::spectral_norm;
use photon_locality::modes::{
    extract_modes, orthogonalize, pair_field_profiles, positive_mode_overlap2,
};
use photon_locality::observables::{
    energy_density_single_photon, energy_density_state, localization_metric,
};
use photon_locality::spectral::{
    eta_infinite_delay, make_truncated_gaussian, spectrum_of, Spectrum, SpectrumMethod,
    TruncatedGaussianParams,
};

/// Print the per-criterion report line, then enforce it.
fn verdict(number: u32, title: &str, passed: bool, detail: String) {
    let flag = if passed { "PASS" } else { "FAIL" };
    println!("acceptance {number}: {flag} — {title} ({detail})");
    assert!(passed, "acceptance criterion {number} failed — {title}: {detail}");
}

/// Truncated-Gaussian pulse spectrum in sigma = 1 units via the closed form.
fn pulse_spectrum(omega0_sigma: f64, tau: f64, points: usize) -> Spectrum {
    let params = TruncatedGaussianParams::new(omega0_sigma, 1.0, tau).unwrap();
    let pulse = make_truncated_gaussian(params).unwrap();
    let grid = FrequencyGrid::new(omega0_sigma + 12.0, points).unwrap();
    spectrum_of(&pulse, &grid, SpectrumMethod::ClosedForm).unwrap()
}

/// The reference figure sweep (three delay curves, exact Fock column),
/// computed once and shared by the bound-level criteria.
fn figure_table() -> &'static SweepTable {
    static TABLE: OnceLock<SweepTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let config = SweepConfig {
            omega_start: 0.2,
            omega_stop: 3.0,
            omega_step: 0.1,
            delays: vec![DelaySpec::Finite(1.5), DelaySpec::Finite(3.0), DelaySpec::Infinite],
            alpha: Complex64::new(1.0, 0.0),
            exact: true,
            grid_points: None,
            n_cut: None,
        };
        let table = bounds::sweep(&config).expect("figure sweep");
        assert_eq!(table.failures().count(), 0, "figure sweep has failure rows");
        table
    })
}

/// Rows of one delay curve as (carrier, eta, 1 - f_upper, point) tuples,
/// ascending in the carrier.
fn curve(table: &SweepTable, delay: DelaySpec) -> Vec<(f64, f64, f64)> {
    table
        .points()
        .filter(|p| match (p.tau_over_sigma, delay) {
            (DelaySpec::Finite(a), DelaySpec::Finite(b)) => a == b,
            (DelaySpec::Infinite, DelaySpec::Infinite) => true,
            _ => false,
        })
        .map(|p| (p.omega0_sigma, p.eta, 1.0 - p.f_upper))
        .collect()
}

/// Slope of a through-origin least-squares fit of y against x.
fn fit_through_origin(points: &[(f64, f64)]) -> f64 {
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    sxy / sxx
}

/// Criterion 1: for a delay of eight pulse widths the numerically computed
/// negative-frequency fraction matches the closed-form complementary-error-
/// function law within 1e-4 absolute, across four carriers, in under 10 s.
#[test]
fn c1_infinite_delay_law_holds_numerically() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &w in &[0.3, 0.5, 1.0, 1.5] {
        let numeric = pulse_spectrum(w, 8.0, 65537).eta();
        let analytic = eta_infinite_delay(w).unwrap();
        worst = worst.max((numeric - analytic).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        1,
        "delayed-pulse fraction reaches the closed-form law",
        worst <= 1e-4 && elapsed < 10.0,
        format!("worst |eta - closed form| = {worst:.3e} (<= 1e-4), {elapsed:.2} s (< 10 s)"),
    );
}

/// Criterion 2: a through-origin regression of 1 - F against the fraction
/// over five decades-spanning fractions recovers the analytic slope
/// (3 - 2 sqrt 2)/2 within 2%, with matrix exponentials at n_cut = 30, in
/// under one minute.
#[test]
fn c2_fidelity_expansion_slope_is_recovered() {
    let start = Instant::now();
    let trunc = FockTruncation::new(30).unwrap();
    let points: Vec<(f64, f64)> = [1e-4, 3e-4, 1e-3, 3e-3, 1e-2]
        .iter()
        .map(|&eta| {
            let f = fidelity_single_photon(&localized_state(eta, Some(trunc)).unwrap());
            (eta, 1.0 - f)
        })
        .collect();
    let slope = fit_through_origin(&points);
    let rel = (slope - FIDELITY_SLOPE).abs() / FIDELITY_SLOPE;
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        2,
        "infidelity slope matches (3 - 2 sqrt 2)/2",
        rel <= 0.02 && elapsed < 60.0,
        format!(
            "slope {slope:.6} vs {FIDELITY_SLOPE:.6}, relative gap {rel:.4} (<= 0.02), \
             {elapsed:.2} s (< 60 s)"
        ),
    );
}

/// Criterion 3: on every row of the figure sweep the exact lower bound stays
/// below the upper bound sqrt(1 - eta), and through-origin fits over the
/// small-fraction rows recover the expansion slopes 0.5 (upper) and
/// 2 - sqrt 2 = 0.586 (lower) within 0.01.
#[test]
fn c3_bound_ordering_and_small_fraction_slopes() {
    let table = figure_table();
    let mut ordered = true;
    let mut upper_fit = Vec::new();
    let mut pert_fit = Vec::new();
    let mut exact_fit = Vec::new();
    for p in table.points() {
        let exact = p.f_lower_exact.expect("exact sweep column");
        if (p.f_upper - (1.0 - p.eta).sqrt()).abs() > 1e-15
            || exact > p.f_upper + 1e-12
            || p.f_lower_pert > p.f_upper + 1e-12
        {
            ordered = false;
        }
        if p.eta <= 0.02 {
            upper_fit.push((p.eta, 1.0 - p.f_upper));
            pert_fit.push((p.eta, 1.0 - p.f_lower_pert));
            exact_fit.push((p.eta, 1.0 - exact));
        }
    }
    let upper_slope = fit_through_origin(&upper_fit);
    let pert_slope = fit_through_origin(&pert_fit);
    let exact_slope = fit_through_origin(&exact_fit);
    let slopes_ok = (upper_slope - 0.5).abs() <= 0.01
        && (pert_slope - 0.586).abs() <= 0.01
        && (exact_slope - 0.586).abs() <= 0.01;
    verdict(
        3,
        "bounds ordered on every row with the expected small-fraction slopes",
        ordered && slopes_ok,
        format!(
            "{} rows ordered: {ordered}; upper slope {upper_slope:.4} (0.5 +- 0.01), \
             lower slopes {pert_slope:.4} / {exact_slope:.4} first-order / exact \
             (0.586 +- 0.01) over {} small-fraction rows",
            table.points().count(),
            upper_fit.len()
        ),
    );
}

/// Criterion 4: figure shape. Both finite-delay infidelity curves decrease
/// with the carrier up to 1.5; the shorter delay sits above the longer one
/// everywhere; the three-width curve tracks the infinite-delay curve within
/// 5% relative up to carrier 1.5.
#[test]
fn c4_figure_curves_have_the_published_shape() {
    let table = figure_table();
    let short = curve(table, DelaySpec::Finite(1.5));
    let long = curve(table, DelaySpec::Finite(3.0));
    let infinite = curve(table, DelaySpec::Infinite);
    assert_eq!(short.len(), 29);
    assert_eq!(long.len(), 29);
    assert_eq!(infinite.len(), 29);

    let non_increasing = |c: &[(f64, f64, f64)]| {
        c.windows(2).all(|w| w[1].0 > 1.5 || w[1].2 <= w[0].2 + 1e-15)
    };
    let monotone = non_increasing(&short) && non_increasing(&long);

    let separated = short
        .iter()
        .zip(&long)
        .all(|(s, l)| s.2 > l.2);

    let mut worst_rel = 0.0f64;
    for (l, i) in long.iter().zip(&infinite) {
        if l.0 <= 1.5 {
            worst_rel = worst_rel.max((l.2 - i.2).abs() / i.2);
        }
    }
    let tracks_infinite = worst_rel <= 0.05;

    verdict(
        4,
        "infidelity curves decrease, order by delay, and track the infinite-delay law",
        monotone && separated && tracks_infinite,
        format!(
            "monotone up to carrier 1.5: {monotone}; short delay above long: {separated}; \
             worst relative gap to infinite delay {worst_rel:.4} (<= 0.05)"
        ),
    );
}

/// Criterion 5: the unit-amplitude coherent baseline equals 1/sqrt(e) at
/// vanishing fraction to 1e-10 and stays below the single-photon lower bound
/// on every swept row with fraction <= 0.3.
#[test]
fn c5_coherent_baseline_is_strictly_inferior() {
    let alpha = Complex64::new(1.0, 0.0);
    let at_zero = coherent_fidelity(alpha, 0.0).unwrap();
    let reference = (-0.5f64).exp();
    let baseline_gap = (at_zero - reference).abs();

    let mut inferior = true;
    let mut rows = 0usize;
    for p in figure_table().points() {
        if p.eta <= 0.3 {
            rows += 1;
            let exact = p.f_lower_exact.expect("exact sweep column");
            if p.f_coherent >= exact || p.f_coherent >= p.f_lower_pert {
                inferior = false;
            }
        }
    }
    verdict(
        5,
        "coherent baseline hits 1/sqrt(e) and never beats the single-photon bound",
        baseline_gap <= 1e-10 && inferior && rows > 0,
        format!(
            "|F_coherent(0) - 1/sqrt(e)| = {baseline_gap:.2e} (<= 1e-10); \
             inferior on all {rows} rows with fraction <= 0.3: {inferior}"
        ),
    );
}

/// Criterion 6: strict localization at the quadrature level. The two-mode
/// state's normal-ordered squared field on t in [-10, -0.1] stays below 1e-3
/// of its global peak, shrinks further when the frequency grid spacing is
/// halved, and sits at least 10x below the plain single photon's tail.
#[test]
fn c6_negative_time_density_is_quadrature_limited_zero() {
    let mut times: Vec<f64> = (0..30).map(|i| -10.0 + i as f64 * 0.34).collect();
    times.extend((0..48).map(|i| 0.15 + 0.15 * i as f64));
    let window = (-10.0, -0.1);

    let spill_at = |points: usize| -> (f64, f64) {
        let ms = orthogonalize(&pulse_spectrum(1.0, 3.0, points)).unwrap();
        let pair = extract_modes(&ms).unwrap();
        let (e1, e2) = pair_field_profiles(&pair, &times).unwrap();
        let state = localized_state(pair.eta_tilde, None).unwrap();
        let localized =
            localization_metric(&energy_density_state(&state, &e1, &e2).unwrap(), window)
                .unwrap();
        let single =
            localization_metric(&energy_density_single_photon(&e1), window).unwrap();
        (localized, single)
    };
    let (coarse, single) = spill_at(16385);
    let (fine, _) = spill_at(32769);

    verdict(
        6,
        "negative-time field density vanishes to quadrature accuracy",
        coarse <= 1e-3 && fine < coarse && single >= 10.0 * coarse,
        format!(
            "relative spill {coarse:.3e} (<= 1e-3), refined to {fine:.3e} on grid halving; \
             single photon spills {single:.3e} (>= 10x)"
        ),
    );
}

/// Criterion 7: the orthogonalization algebra holds on 100 randomized
/// spectra: quadratic residual of the mixing coefficient <= 1e-12, the
/// modified fraction's closed form vs quadrature <= 1e-8, the modification
/// never increases the fraction, and the mode-overlap closed form matches
/// quadrature to 1e-8.
#[test]
fn c7_randomized_spectra_satisfy_the_orthogonalization_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240517);
    let mut worst_quadratic = 0.0f64;
    let mut worst_fraction_gap = 0.0f64;
    let mut worst_overlap_gap = 0.0f64;
    let mut improved = true;
    for _ in 0..100 {
        let s = common::random_spectrum(&mut rng);
        let ms = orthogonalize(&s).unwrap();
        let (i, beta) = (s.overlap_i(), ms.beta());
        worst_quadratic = worst_quadratic.max((beta * beta * i.conj() - beta + i).norm());
        worst_fraction_gap =
            worst_fraction_gap.max((ms.eta_tilde() - ms.eta_tilde_closed_form()).abs());
        if ms.eta_tilde() > s.eta() + 1e-12 {
            improved = false;
        }
        let (eta, j) = (s.eta(), ms.j());
        let closed = (1.0 + j - 2.0 * eta) * (1.0 + j) / (4.0 * j * (1.0 - eta));
        worst_overlap_gap = worst_overlap_gap.max((positive_mode_overlap2(&ms) - closed).abs());
    }
    verdict(
        7,
        "orthogonalization algebra holds on 100 randomized spectra",
        worst_quadratic <= 1e-12
            && worst_fraction_gap <= 1e-8
            && improved
            && worst_overlap_gap <= 1e-8,
        format!(
            "worst quadratic residual {worst_quadratic:.2e} (<= 1e-12), fraction route gap \
             {worst_fraction_gap:.2e} (<= 1e-8), fraction never increased: {improved}, \
             overlap route gap {worst_overlap_gap:.2e} (<= 1e-8)"
        ),
    );
}

/// Criterion 8: truncated-operator identities. The squeeze operator is
/// orthogonal to 1e-10 away from the truncation edge, its conjugation
/// identity holds to 1e-8 on the certified block, and exponentiating the
/// generator reproduces the analytic squeezed-vacuum ladder to 1e-10
/// coefficientwise.
#[test]
fn c8_truncated_operator_identities_hold() {
    // Orthogonality of the exponentiated generator on the protected block.
    let trunc = FockTruncation::new(30).unwrap();
    let s = squeeze_operator(0.6, trunc).unwrap();
    let product = s.matrix().t().dot(s.matrix());
    let half = trunc.n_cut() / 2;
    let keep: Vec<usize> = (0..=half)
        .flat_map(|n1| (0..=half).map(move |n2| trunc.index(n1, n2)))
        .collect();
    let mut block = ndarray::Array2::zeros((keep.len(), keep.len()));
    for (bi, &i) in keep.iter().enumerate() {
        for (bj, &j) in keep.iter().enumerate() {
            block[[bi, bj]] = product[[i, j]] - if i == j { 1.0 } else { 0.0 };
        }
    }
    let unitarity = spectral_norm(&block.view());

    // Conjugation identity on the leakage-certified block.
    let transform = squeeze_transform_residual(0.2, FockTruncation::new(40).unwrap()).unwrap();

    // Matrix exponential vs the analytic squeezed-vacuum ladder.
    let trunc20 = FockTruncation::new(20).unwrap();
    let s20 = squeeze_operator(0.35, trunc20).unwrap();
    let want = tmsv_ladder(0.35, trunc20.n_cut());
    let mut vacuum = vec![0.0; trunc20.dim()];
    vacuum[trunc20.index(0, 0)] = 1.0;
    let got = s20.apply(&vacuum);
    let mut ladder_gap = 0.0f64;
    for n1 in 0..=trunc20.n_cut() {
        for n2 in 0..=trunc20.n_cut() {
            let expect = if n1 == n2 { want[n1] } else { 0.0 };
            ladder_gap = ladder_gap.max((got[trunc20.index(n1, n2)] - expect).abs());
        }
    }

    verdict(
        8,
        "squeeze operator is orthogonal, transforms correctly, and matches the analytic ladder",
        unitarity <= 1e-10 && transform <= 1e-8 && ladder_gap <= 1e-10,
        format!(
            "unitarity defect {unitarity:.2e} (<= 1e-10), certified-block transform residual \
             {transform:.2e} (<= 1e-8), ladder coefficient gap {ladder_gap:.2e} (<= 1e-10)"
        ),
    );
}
