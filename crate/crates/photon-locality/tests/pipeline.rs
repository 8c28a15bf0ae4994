//! End-to-end properties of the spectrum -> orthogonalization -> mode pair
//! pipeline on randomized spectra, and the lossless file round trip of the
//! state JSON.
//!
//! The randomized family is built from Gaussian frequency bumps with random
//! centers, widths, and complex amplitudes, plus a deliberate
//! negative-frequency contamination bump. Superexponential decay makes empty
//! asymptotic tails exact at the grid edge, so the algebraic contracts can
//! be tested at full tightness.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_spectrum;
use photon_locality::fockspace::{
    fidelity_single_photon, localized_state, photon_statistics, LocalizedStateVector,
};
use photon_locality::io::pipeline_state_json;
use photon_locality::modes::{extract_modes, orthogonality_functional, orthogonalize};

#[test]
fn randomized_spectra_keep_the_algebraic_contracts() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240517);
    for case in 0..100 {
        let s = random_spectrum(&mut rng);
        let eta = s.eta();
        assert!(
            eta > 0.0 && eta < 0.45,
            "case {case}: generator left its design envelope, eta = {eta}"
        );

        let ms = orthogonalize(&s).unwrap();

        // The modification coefficient solves its quadratic.
        let i = s.overlap_i();
        let beta = ms.beta();
        let residual = (beta * beta * i.conj() - beta + i).norm();
        assert!(residual <= 1e-12, "case {case}: quadratic residual {residual:.3e}");

        // The modified spectrum is orthogonal to its own reflection.
        let functional = orthogonality_functional(&ms).norm() / ms.norm2();
        assert!(functional <= 1e-10, "case {case}: functional {functional:.3e}");

        // Quadrature and closed-form routes to the modified fraction agree,
        // and modification never increases the fraction.
        let gap = (ms.eta_tilde() - ms.eta_tilde_closed_form()).abs();
        assert!(gap <= 1e-8, "case {case}: fraction routes differ by {gap:.3e}");
        assert!(
            ms.eta_tilde() <= eta + 1e-12,
            "case {case}: fraction worsened {} -> {}",
            eta,
            ms.eta_tilde()
        );

        // Positive-half overlap of original and modified spectra: quadrature
        // against the closed form in (eta, J).
        let j = ms.j();
        let closed = (1.0 + j - 2.0 * eta) * (1.0 + j) / (4.0 * j * (1.0 - eta));
        let quad = photon_locality::modes::positive_mode_overlap2(&ms);
        assert!(
            (quad - closed).abs() <= 1e-8,
            "case {case}: overlap quadrature {quad} vs closed {closed}"
        );

        // The extracted pair is orthonormal with the defining compensation
        // constant.
        let pair = extract_modes(&ms).unwrap();
        assert!((pair.xi1.norm2() - 1.0).abs() <= 1e-10, "case {case}");
        assert!((pair.xi2.norm2() - 1.0).abs() <= 1e-10, "case {case}");
        assert!(pair.xi1.inner(&pair.xi2).norm() <= 1e-8, "case {case}");
        let c2 = (1.0 - pair.eta_tilde) / pair.eta_tilde;
        assert!(
            (pair.c * pair.c - c2).abs() <= 1e-10 * c2,
            "case {case}: compensation constant off"
        );
    }
}

#[test]
fn state_json_file_round_trip_is_exact() {
    let state = localized_state(0.046, None).unwrap();
    let c = ((1.0 - 0.046f64) / 0.046).sqrt();
    let text = pipeline_state_json(1.0, "3", 0.078, c, &state);

    let dir = std::env::temp_dir().join(format!("photon-locality-pipeline-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("state.json");
    std::fs::write(&path, &text).unwrap();
    let reread = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(reread, text, "file round trip must be byte-exact");

    let back = LocalizedStateVector::from_json_str(&reread).unwrap();
    let f_gap = (fidelity_single_photon(&state) - fidelity_single_photon(&back)).abs();
    assert!(f_gap <= 1e-12, "fidelity drift {f_gap:.3e}");
    let p_gap = photon_statistics(&state)
        .iter()
        .zip(photon_statistics(&back))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(p_gap <= 1e-12, "statistics drift {p_gap:.3e}");
    // The ladder is the complete support; it must survive bit-for-bit.
    assert_eq!(back.ladder(), state.ladder());
}
