//! Error-function family and the incomplete half-power Fourier integrals.
//!
//! The closed-form spectrum of a truncated Gaussian envelope is a Faddeeva
//! function, and the analytic tail corrections for field profiles reduce to
//! integrals of `omega^{-m-1/2} e^{-i omega t}` over `[omega_min, inf)`.
//! Both families live here so every caller shares one implementation.

use errorfunctions::{ComplexErrorFunctions, RealErrorFunctions};
use num_complex::Complex64;

/// Real error function.
pub fn erf(x: f64) -> f64 {
    RealErrorFunctions::erf(x)
}

/// Real complementary error function.
pub fn erfc(x: f64) -> f64 {
    RealErrorFunctions::erfc(x)
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
///
/// For arguments in the closed upper half-plane `|w| <= 1`, which keeps the
/// spectrum evaluation free of overflow for every pulse parameter set.
pub fn faddeeva(z: Complex64) -> Complex64 {
    z.w()
}

/// Tail integrals `F_m(t) = \int_{omega_min}^inf omega^{-m-1/2} e^{-i omega t} domega`
/// for `m = 0, .., m_count-1`.
///
/// `F_0` is conditionally convergent and evaluates in closed form through the
/// Faddeeva function; higher orders follow by integration by parts,
/// `F_{m+1} = (omega_min^{-m-1/2} e^{-i omega_min t} - i t F_m) / (m + 1/2)`.
/// The recurrence multiplies rounding errors by at most `|t|/(m + 1/2)` per
/// step, which is harmless here because accuracy only matters where `|t|` is
/// of order the pulse width.
///
/// # Panics
/// Panics if `omega_min <= 0` or `t == 0` (where `F_0` diverges).
pub fn sqrt_tail_integrals(omega_min: f64, t: f64, m_count: usize) -> Vec<Complex64> {
    assert!(omega_min > 0.0, "tail integrals need omega_min > 0");
    assert!(t != 0.0, "F_0 diverges at t = 0");
    let it = Complex64::new(0.0, t);
    // sqrt(pi/(it)) and w(i sqrt(it) sqrt(omega_min)) with principal branches;
    // the Faddeeva argument lies in the upper half-plane for either sign of t.
    let root_it = it.sqrt();
    let phase = Complex64::new(0.0, -omega_min * t).exp();
    let f0 = (std::f64::consts::PI / it).sqrt()
        * phase
        * faddeeva(Complex64::new(0.0, 1.0) * root_it * omega_min.sqrt());
    let mut out = Vec::with_capacity(m_count);
    out.push(f0);
    let mut boundary = omega_min.powf(-0.5) * phase;
    for m in 0..m_count.saturating_sub(1) {
        let prev = out[m];
        let next = (boundary - it * prev) / (m as f64 + 0.5);
        out.push(next);
        boundary /= omega_min;
    }
    out
}
