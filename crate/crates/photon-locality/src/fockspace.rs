//! Truncated two-mode Fock space: the squeeze operator, the localized state
//! built from it, and the operator identity that underpins the field
//! cancellation.
//!
//! The state of interest is `S' A1' S |0>` (primes denote adjoints), where
//! `S = exp(gamma (a1 a2 - a1' a2'))` pairs the two compensating pulse modes
//! and `A1' = sum_n |n+1><n|` is the isometric number shift on mode 1. Its
//! expansion runs along the ladder `c_1 |1,0> + c_2 |2,1> + c_3 |3,2> + ...`,
//! and `|c_1|` is the fidelity with an ideal single photon.

use crate::error::{invalid, Error, Result};
use crate::linalg::{expm, spectral_norm};
use ndarray::Array2;
use serde::{Deserialize, Serialize};

/// Hard bound on the squeezed-vacuum ladder tail `(tanh gamma)^{n_cut}`
/// required before a localized state is accepted.
pub const TMSV_TAIL_BOUND: f64 = 1e-12;
/// Truncation used when the caller does not pin one, raised automatically
/// until the tail bound holds.
pub const DEFAULT_N_CUT: usize = 30;
/// Ceiling for the automatic raise; beyond this the dense exponential stops
/// being desk-scale and the request is refused instead.
pub const MAX_AUTO_N_CUT: usize = 64;
/// Probability mass a squeezed block state may leave on the outermost two
/// occupation shells for the block to count as truncation-clean.
pub const BLOCK_LEAK_BOUND: f64 = 1e-10;

/// Per-mode photon-number cutoff; the two-mode space has dimension
/// `(n_cut + 1)^2`, indexed row-major with the mode-1 occupation outer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockTruncation {
    n_cut: usize,
}

impl FockTruncation {
    pub fn new(n_cut: usize) -> Result<Self> {
        if n_cut < 2 {
            return Err(invalid!("n_cut must be at least 2, got {n_cut}"));
        }
        Ok(FockTruncation { n_cut })
    }

    pub fn n_cut(&self) -> usize {
        self.n_cut
    }

    pub fn dim(&self) -> usize {
        (self.n_cut + 1) * (self.n_cut + 1)
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        debug_assert!(n1 <= self.n_cut && n2 <= self.n_cut);
        n1 * (self.n_cut + 1) + n2
    }
}

/// Dense operator on the truncated two-mode space. The squeeze generator is
/// real antisymmetric, so everything downstream stays in real arithmetic and
/// the exponential is exactly orthogonal up to rounding.
#[derive(Debug, Clone)]
pub struct TwoModeOperator {
    trunc: FockTruncation,
    matrix: Array2<f64>,
    tmsv_tail: f64,
}

impl TwoModeOperator {
    pub fn trunc(&self) -> FockTruncation {
        self.trunc
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    /// Geometric tail mass `(tanh gamma)^{n_cut}` of the squeezed-vacuum
    /// ladder this operator generates; callers needing certified accuracy
    /// must check it against [`TMSV_TAIL_BOUND`].
    pub fn tmsv_tail(&self) -> f64 {
        self.tmsv_tail
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        apply_dense(&self.matrix, v, false)
    }

    pub fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        apply_dense(&self.matrix, v, true)
    }
}

fn apply_dense(m: &Array2<f64>, v: &[f64], transpose: bool) -> Vec<f64> {
    let n = m.nrows();
    assert_eq!(v.len(), n);
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            let mij = if transpose { m[[j, i]] } else { m[[i, j]] };
            acc += mij * v[j];
        }
        out[i] = acc;
    }
    out
}

/// Apply the annihilator of `mode` (1 or 2) as a sparse shift,
/// `a|n> = sqrt(n) |n-1>` on that mode's index.
pub fn apply_annihilator(trunc: FockTruncation, mode: usize, v: &[f64]) -> Vec<f64> {
    assert!(mode == 1 || mode == 2, "modes are numbered 1 and 2");
    assert_eq!(v.len(), trunc.dim());
    let nc = trunc.n_cut();
    let mut out = vec![0.0; v.len()];
    for n1 in 0..=nc {
        for n2 in 0..=nc {
            let (m1, m2, amp) = if mode == 1 {
                if n1 == 0 {
                    continue;
                }
                (n1 - 1, n2, (n1 as f64).sqrt())
            } else {
                if n2 == 0 {
                    continue;
                }
                (n1, n2 - 1, (n2 as f64).sqrt())
            };
            out[trunc.index(m1, m2)] += amp * v[trunc.index(n1, n2)];
        }
    }
    out
}

/// Dense annihilator matrix for `mode` (used where operator products are
/// formed; vector pipelines should prefer [`apply_annihilator`]).
pub fn annihilator_matrix(trunc: FockTruncation, mode: usize) -> Array2<f64> {
    assert!(mode == 1 || mode == 2, "modes are numbered 1 and 2");
    let nc = trunc.n_cut();
    let mut a = Array2::zeros((trunc.dim(), trunc.dim()));
    for n1 in 0..=nc {
        for n2 in 0..=nc {
            if mode == 1 && n1 > 0 {
                a[[trunc.index(n1 - 1, n2), trunc.index(n1, n2)]] = (n1 as f64).sqrt();
            }
            if mode == 2 && n2 > 0 {
                a[[trunc.index(n1, n2 - 1), trunc.index(n1, n2)]] = (n2 as f64).sqrt();
            }
        }
    }
    a
}

/// The two-mode squeeze `S = exp(gamma (a1 a2 - a1' a2'))` on the truncated
/// space. The generator is assembled sparsely and exponentiated densely; the
/// returned operator records the squeezed-vacuum tail mass but does not
/// enforce the tail bound itself (state construction does).
pub fn squeeze_operator(gamma: f64, trunc: FockTruncation) -> Result<TwoModeOperator> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(invalid!("squeeze strength must be finite and non-negative, got {gamma}"));
    }
    let nc = trunc.n_cut();
    let dim = trunc.dim();
    let mut k = Array2::zeros((dim, dim));
    for n1 in 1..=nc {
        for n2 in 1..=nc {
            let amp = gamma * ((n1 * n2) as f64).sqrt();
            let lower = trunc.index(n1 - 1, n2 - 1);
            let upper = trunc.index(n1, n2);
            k[[lower, upper]] += amp; // a1 a2
            k[[upper, lower]] -= amp; // -a1' a2'
        }
    }
    let matrix = expm(&k);
    Ok(TwoModeOperator {
        trunc,
        matrix,
        tmsv_tail: gamma.tanh().powi(nc as i32),
    })
}

/// Analytic two-mode squeezed vacuum ladder: coefficient of `|n,n>` in
/// `S|0,0>` is `sech(gamma) (-tanh gamma)^n`.
pub fn tmsv_ladder(gamma: f64, n_cut: usize) -> Vec<f64> {
    let lambda = gamma.tanh();
    let sech = 1.0 / gamma.cosh();
    (0..=n_cut).map(|n| sech * (-lambda).powi(n as i32)).collect()
}

/// The localized state with its ladder expansion and provenance.
#[derive(Debug, Clone)]
pub struct LocalizedStateVector {
    eta_tilde: f64,
    gamma: f64,
    trunc: FockTruncation,
    coeffs: Vec<f64>,
    ladder: Vec<f64>,
    tmsv_tail: f64,
    off_ladder_mass: f64,
}

impl LocalizedStateVector {
    pub fn eta_tilde(&self) -> f64 {
        self.eta_tilde
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn trunc(&self) -> FockTruncation {
        self.trunc
    }

    pub fn n_cut(&self) -> usize {
        self.trunc.n_cut()
    }

    /// Full coefficient vector in the truncated basis (real by the phase
    /// convention `c_1 > 0`).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Ladder coefficients `c_k` of `|k, k-1>`, `k = 1..=n_cut`.
    pub fn ladder(&self) -> &[f64] {
        &self.ladder
    }

    pub fn tmsv_tail(&self) -> f64 {
        self.tmsv_tail
    }

    pub fn off_ladder_mass(&self) -> f64 {
        self.off_ladder_mass
    }

    /// Probability distribution over the total photon number
    /// `N = n1 + n2`, indexed by `N` from 0 to `2 n_cut`. Supported on odd
    /// `N` only (the ladder state `|k, k-1>` has `N = 2k - 1`).
    pub fn photon_number_probs(&self) -> Vec<f64> {
        let nc = self.trunc.n_cut();
        let mut probs = vec![0.0; 2 * nc + 1];
        for n1 in 0..=nc {
            for n2 in 0..=nc {
                probs[n1 + n2] += self.coeffs[self.trunc.index(n1, n2)].powi(2);
            }
        }
        probs
    }

    /// Serialize to the interchange JSON schema.
    pub fn to_json_string(&self) -> String {
        let json = StateJson {
            eta_tilde: self.eta_tilde,
            gamma: self.gamma,
            n_cut: self.trunc.n_cut(),
            ladder: self
                .ladder
                .iter()
                .enumerate()
                .map(|(i, &c)| LadderEntryJson { n: i + 1, re: c, im: 0.0 })
                .collect(),
            photon_number_probs: self.photon_number_probs(),
        };
        let mut s = serde_json::to_string_pretty(&json).expect("state serialization cannot fail");
        s.push('\n');
        s
    }

    /// Rebuild a state from its JSON form. The ladder is the complete
    /// support, so this is exact.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: StateJson =
            serde_json::from_str(text).map_err(|e| invalid!("state JSON did not parse: {e}"))?;
        if !(json.eta_tilde > 0.0 && json.eta_tilde < 0.5) {
            return Err(invalid!("state JSON eta_tilde {} out of (0, 1/2)", json.eta_tilde));
        }
        let trunc = FockTruncation::new(json.n_cut)?;
        if json.ladder.len() > json.n_cut {
            return Err(invalid!(
                "state JSON has {} ladder entries but n_cut = {}",
                json.ladder.len(),
                json.n_cut
            ));
        }
        let mut coeffs = vec![0.0; trunc.dim()];
        let mut ladder = vec![0.0; trunc.n_cut()];
        for entry in &json.ladder {
            if entry.n < 1 || entry.n > trunc.n_cut() {
                return Err(invalid!("ladder index n = {} out of 1..=n_cut", entry.n));
            }
            if entry.im != 0.0 {
                return Err(invalid!(
                    "localized states are real by convention; ladder entry n = {} has im = {}",
                    entry.n,
                    entry.im
                ));
            }
            ladder[entry.n - 1] = entry.re;
            coeffs[trunc.index(entry.n, entry.n - 1)] = entry.re;
        }
        let gamma = json.gamma;
        Ok(LocalizedStateVector {
            eta_tilde: json.eta_tilde,
            gamma,
            trunc,
            coeffs,
            ladder,
            tmsv_tail: gamma.tanh().powi(trunc.n_cut() as i32),
            off_ladder_mass: 0.0,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct LadderEntryJson {
    n: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    eta_tilde: f64,
    gamma: f64,
    n_cut: usize,
    ladder: Vec<LadderEntryJson>,
    photon_number_probs: Vec<f64>,
}

fn check_eta_tilde(eta_tilde: f64) -> Result<(f64, f64)> {
    if !(eta_tilde > 0.0 && eta_tilde < 0.5) || !eta_tilde.is_finite() {
        return Err(invalid!(
            "eta_tilde must lie strictly inside (0, 1/2), got {eta_tilde}"
        ));
    }
    let lambda = (eta_tilde / (1.0 - eta_tilde)).sqrt();
    Ok((lambda, lambda.atanh()))
}

/// Smallest truncation satisfying the ladder tail bound for this fraction.
pub fn required_n_cut(eta_tilde: f64) -> Result<usize> {
    let (lambda, _) = check_eta_tilde(eta_tilde)?;
    let n = (TMSV_TAIL_BOUND.ln() / lambda.ln()).ceil() as usize;
    Ok(n.max(2))
}

/// Build the localized state for a modified negative-frequency fraction.
///
/// With `trunc = None` the truncation starts at [`DEFAULT_N_CUT`] and is
/// raised until `(tanh gamma)^{n_cut} < 1e-12`, refusing past
/// [`MAX_AUTO_N_CUT`]; a pinned truncation is honored as-is and rejected with
/// a truncation error if it cannot certify the tail bound.
/// The isometric photon-adding shift on mode 1, `A1' = sum_n |n+1><n|`:
/// `|n1, n2> -> |n1 + 1, n2>`. Unlike the bare creation operator it carries
/// no `sqrt(n + 1)` weights, so it preserves the norm of any vector with no
/// support on the top shell `n1 = n_cut` (whose row is dropped).
pub fn shift_mode1_up(trunc: FockTruncation, v: &[f64]) -> Vec<f64> {
    let nc = trunc.n_cut();
    let mut shifted = vec![0.0; trunc.dim()];
    for n1 in 0..nc {
        for n2 in 0..=nc {
            shifted[trunc.index(n1 + 1, n2)] = v[trunc.index(n1, n2)];
        }
    }
    shifted
}

pub fn localized_state(eta_tilde: f64, trunc: Option<FockTruncation>) -> Result<LocalizedStateVector> {
    let (lambda, gamma) = check_eta_tilde(eta_tilde)?;
    let trunc = match trunc {
        Some(t) => {
            let tail = lambda.powi(t.n_cut() as i32);
            if tail >= TMSV_TAIL_BOUND {
                return Err(Error::Truncation(format!(
                    "n_cut = {} leaves ladder tail {tail:.3e} >= {TMSV_TAIL_BOUND:.0e} at eta_tilde = {eta_tilde}; needs n_cut >= {}",
                    t.n_cut(),
                    required_n_cut(eta_tilde)?
                )));
            }
            t
        }
        None => {
            let needed = required_n_cut(eta_tilde)?.max(DEFAULT_N_CUT);
            if needed > MAX_AUTO_N_CUT {
                return Err(Error::Truncation(format!(
                    "eta_tilde = {eta_tilde} needs n_cut = {needed} (> {MAX_AUTO_N_CUT}) for the ladder tail bound"
                )));
            }
            FockTruncation::new(needed)?
        }
    };

    let s = squeeze_operator(gamma, trunc)?;
    let nc = trunc.n_cut();
    let mut v = vec![0.0; trunc.dim()];
    v[trunc.index(0, 0)] = 1.0;
    let v = s.apply(&v);
    let shifted = shift_mode1_up(trunc, &v);
    let state = s.apply_transpose(&shifted);

    let norm2: f64 = state.iter().map(|x| x * x).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(Error::Accuracy(format!(
            "localized state norm^2 = {norm2} after a certified truncation; expected 1"
        )));
    }
    // Phase convention: c_1 real positive.
    let sign = if state[trunc.index(1, 0)] < 0.0 { -1.0 } else { 1.0 };
    let mut ladder: Vec<f64> = (1..=nc).map(|k| sign * state[trunc.index(k, k - 1)]).collect();
    let ladder_mass: f64 = ladder.iter().map(|c| c * c).sum();
    let off_ladder_mass = ((norm2 - ladder_mass) / norm2).max(0.0);
    if off_ladder_mass > 1e-10 {
        return Err(Error::Accuracy(format!(
            "localized state leaks {off_ladder_mass:.3e} probability off the |n+1, n> ladder"
        )));
    }
    // Canonical form: project onto the validated ladder (discarding the
    // rounding-level off-ladder noise just measured) and renormalize, so the
    // stored state and its JSON form are exactly ladder-supported.
    let scale = 1.0 / ladder_mass.sqrt();
    for c in &mut ladder {
        *c *= scale;
    }
    let mut coeffs = vec![0.0; trunc.dim()];
    for (k, &c) in ladder.iter().enumerate() {
        coeffs[trunc.index(k + 1, k)] = c;
    }
    Ok(LocalizedStateVector {
        eta_tilde,
        gamma,
        trunc,
        coeffs,
        ladder,
        tmsv_tail: lambda.powi(nc as i32),
        off_ladder_mass,
    })
}

/// Fidelity of the localized state with an ideal single photon in mode 1:
/// `|<1,0|state>| = |c_1|`.
pub fn fidelity_single_photon(state: &LocalizedStateVector) -> f64 {
    state.ladder[0].abs()
}

/// Distribution over the total photon number (free-function form of
/// [`LocalizedStateVector::photon_number_probs`]).
pub fn photon_statistics(state: &LocalizedStateVector) -> Vec<f64> {
    state.photon_number_probs()
}

fn check_ladder_tail(eta_tilde: f64, trunc: FockTruncation) -> Result<(f64, f64)> {
    let (lambda, gamma) = check_eta_tilde(eta_tilde)?;
    let tail = lambda.powi(trunc.n_cut() as i32);
    if tail >= TMSV_TAIL_BOUND {
        return Err(Error::Truncation(format!(
            "n_cut = {} leaves ladder tail {tail:.3e} >= {TMSV_TAIL_BOUND:.0e} at eta_tilde = {eta_tilde}",
            trunc.n_cut()
        )));
    }
    Ok((lambda, gamma))
}

fn residual_matrix_from(s: &TwoModeOperator, c: f64, trunc: FockTruncation) -> Array2<f64> {
    let a1 = annihilator_matrix(trunc, 1);
    let a2_dag = annihilator_matrix(trunc, 2).t().to_owned();
    let x = &a1 - &(c * &a2_dag);
    s.matrix().dot(&x).dot(&s.matrix().t()) + (c * c - 1.0).sqrt() * &a2_dag
}

/// Largest occupation ceiling on a square block whose mass leaks under the
/// squeeze are certified negligible, plus the residual norm on that block.
pub(crate) fn transform_residual_detail(
    eta_tilde: f64,
    trunc: FockTruncation,
) -> Result<(f64, usize)> {
    let (_, gamma) = check_ladder_tail(eta_tilde, trunc)?;
    let c = ((1.0 - eta_tilde) / eta_tilde).sqrt();
    let s = squeeze_operator(gamma, trunc)?;
    let nc = trunc.n_cut();

    // The truncated ladder operators only act wrongly on the two outermost
    // occupation shells. A block `n1, n2 <= k` is certified when every block
    // state, conjugated by the squeeze, keeps at most `BLOCK_LEAK_BOUND` of
    // its probability on those shells; the residual measured on a certified
    // block then reflects the operator identity, not the truncation edge.
    let shell: Vec<usize> = (0..=nc)
        .flat_map(|n1| (0..=nc).map(move |n2| (n1, n2)))
        .filter(|&(n1, n2)| n1 >= nc - 1 || n2 >= nc - 1)
        .map(|(n1, n2)| trunc.index(n1, n2))
        .collect();
    let shell_mass = |j: usize| -> f64 { shell.iter().map(|&i| s.matrix()[[j, i]].powi(2)).sum() };
    let mut certified = None;
    'blocks: for k in (2..=nc / 2).rev() {
        for n1 in 0..=k {
            for n2 in 0..=k {
                if shell_mass(trunc.index(n1, n2)) > BLOCK_LEAK_BOUND {
                    continue 'blocks;
                }
            }
        }
        certified = Some(k);
        break;
    }
    let Some(block_cut) = certified else {
        return Err(Error::Truncation(format!(
            "no block up to occupation {} keeps its squeezed shell mass below {BLOCK_LEAK_BOUND:.0e} \
             at n_cut = {nc}, eta_tilde = {eta_tilde}; raise the truncation",
            nc / 2
        )));
    };

    let m = residual_matrix_from(&s, c, trunc);
    let keep: Vec<usize> = (0..=block_cut)
        .flat_map(|n1| (0..=block_cut).map(move |n2| trunc.index(n1, n2)))
        .collect();
    let mut block = Array2::zeros((keep.len(), keep.len()));
    for (bi, &i) in keep.iter().enumerate() {
        for (bj, &j) in keep.iter().enumerate() {
            block[[bi, bj]] = m[[i, j]];
        }
    }
    Ok((spectral_norm(&block.view()), block_cut))
}

/// Operator-norm residual of the squeeze identity
/// `S (a1 - C a2') S' = -sqrt(C^2 - 1) a2'` with `C = coth(gamma)`.
///
/// The norm is taken on the largest square block `n1, n2 <= k` (with
/// `k <= n_cut / 2`) certified by a leakage bound to be insensitive to the
/// truncation edge; without that restriction the norm is dominated by the
/// edge rows where the truncated ladder operators are simply wrong.
pub fn squeeze_transform_residual(eta_tilde: f64, trunc: FockTruncation) -> Result<f64> {
    transform_residual_detail(eta_tilde, trunc).map(|(residual, _)| residual)
}
