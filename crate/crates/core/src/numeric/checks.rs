//! Residuals of the functional equation, the pole-sum form of the
//! contour integral, and the cotangent partial-fraction expansion.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::em::zeta_em;
use super::gamma::{cos_pi, gamma_complex, sin_pi};
use super::{ComplexValue, NumericConfig, NumericError};
use crate::exact::{rational_to_f64, BigRational};

const FUNCEQ_EXCLUSION: f64 = 1e-3;

/// Compares the contour integral `-2i sin(πs) Γ(s) ζ(s)` (with ζ from the
/// Euler–Maclaurin route) against the sum of its residues at the poles
/// `x = 2πik`, `k = ±1..±n_poles`, each contributing `(-2πi)(-2πik)^{s-1}`.
///
/// The neglected poles `|k| > n_poles` are added back through the integral
/// estimate `Σ_{k>N} k^{s-1} ≈ -(N + 1/2)^s / s`. Returns the absolute
/// difference of the two sides.
pub fn inverted_contour_check(
    s: ComplexValue,
    n_poles: usize,
    cfg: &NumericConfig,
) -> Result<f64, NumericError> {
    if s.re > -0.5 {
        return Err(NumericError::OutOfValidatedRange(
            s,
            "the pole sum needs Re s <= -0.5".into(),
        ));
    }
    let zeta = zeta_em(s, cfg)?;
    // sin(πs) Γ(s) = π / Γ(1-s) keeps the nonpositive integers finite
    let integral = Complex64::new(0.0, -2.0 * PI) * zeta / gamma_complex(1.0 - s)?;

    let minus_two_pi_i = Complex64::new(0.0, -2.0 * PI);
    let exponent = s - 1.0;
    let mut poles = Complex64::new(0.0, 0.0);
    for k in (1..=n_poles).rev() {
        let at = 2.0 * PI * k as f64;
        let upper = (exponent * Complex64::new(0.0, -at).ln()).exp();
        let lower = (exponent * Complex64::new(0.0, at).ln()).exp();
        poles += upper + lower;
    }
    poles *= minus_two_pi_i;

    let two_pi = Complex64::new(2.0 * PI, 0.0);
    let branch = (exponent * Complex64::new(0.0, -1.0).ln()).exp()
        + (exponent * Complex64::new(0.0, 1.0).ln()).exp();
    let tail_sum = -((n_poles as f64 + 0.5).ln() * s).exp() / s;
    let tail = minus_two_pi_i * (two_pi.ln() * exponent).exp() * branch * tail_sum;

    Ok((integral - (poles + tail)).norm())
}

/// Acceptance bound for [`inverted_contour_check`]: `max(1e-8, N^{Re s}/|Re s|)`.
pub fn inverted_contour_tail_bound(s: ComplexValue, n_poles: usize) -> f64 {
    let sigma = s.re;
    ((n_poles as f64).powf(sigma) / sigma.abs()).max(1e-8)
}

/// `|2 cos(πs/2) Γ(s) ζ(s) - (2π)^s ζ(1-s)| / max(|lhs|, |rhs|)` with both
/// ζ values from the Euler–Maclaurin route.
pub fn funceq_residual(s: ComplexValue, cfg: &NumericConfig) -> Result<f64, NumericError> {
    let nearest = s.re.round();
    let near_integer = s.im.abs() < FUNCEQ_EXCLUSION && (s.re - nearest).abs() < FUNCEQ_EXCLUSION;
    if near_integer && nearest <= 1.0 {
        return Err(NumericError::NearPole(s));
    }
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let lhs = 2.0 * cos_pi(s * 0.5) * gamma_complex(s)? * zeta_em(s, cfg)?;
    let rhs = ((2.0 * PI).ln() * s).exp() * zeta_em(one_minus, cfg)?;
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((lhs - rhs).norm() / scale)
}

/// `|π cot(πx) - (1/x + Σ_{n=1}^{N} (1/(x+n) + 1/(x-n)))|`.
pub fn cotangent_check(x: &BigRational, n_terms: usize) -> Result<f64, NumericError> {
    if x.is_integer() {
        return Err(NumericError::InvalidConfig(format!(
            "cotangent check needs a non-integer x, got {x}"
        )));
    }
    let xf = rational_to_f64(x);
    let z = Complex64::new(xf, 0.0);
    let cot = PI * cos_pi(z).re / sin_pi(z).re;
    let mut partial = 0.0;
    for n in (1..=n_terms).rev() {
        let nf = n as f64;
        partial += 2.0 * xf / ((xf - nf) * (xf + nf));
    }
    partial += 1.0 / xf;
    Ok((cot - partial).abs())
}

/// `2|x|/(N - |x|) + 1e-12`: the paired tail `Σ_{n>N} 2x/(n² - x²)` is at most this.
pub fn cotangent_tail_bound(x: &BigRational, n_terms: usize) -> f64 {
    let xf = rational_to_f64(x).abs();
    2.0 * xf / (n_terms as f64 - xf) + 1e-12
}
