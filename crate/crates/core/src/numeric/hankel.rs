//! ζ(s) from the contour integral `I(s) = ∫_γ (-x)^{s-1} / (e^x - 1) dx`.
//!
//! γ comes in from `x_max + ir` along `Im x = r`, turns counterclockwise
//! around the origin on `|x| = r` through `-r`, and leaves along
//! `Im x = -r`. With this orientation `I(s) = -2i sin(πs) Γ(s) ζ(s)`, so
//! `ζ(s) = -Γ(1-s) I(s) / (2πi)`, which stays finite at `s = 0, -1, -2, …`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::gamma_complex;
use super::quadrature::GaussLegendre;
use super::{ensure_finite, ComplexValue, ContourSpec, NumericError};

const MAX_REFINEMENTS: usize = 6;
const TAIL_TARGET: f64 = 1e-17;
const X_MAX_LIMIT: f64 = 700.0;
const ROUNDOFF_FACTOR: f64 = 8.0;
/// Results whose round-off floor exceeds this (relative to `max(1, |ζ|)`) are refused.
const MAX_ROUNDOFF: f64 = 1e-8;

/// Outcome of a Hankel-contour evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelResult {
    pub zeta: ComplexValue,
    pub integral: ComplexValue,
    pub x_max: f64,
    pub panels_ray: usize,
    pub panels_arc: usize,
    /// Change in ζ produced by the last panel doubling.
    pub last_change: f64,
    /// Rounding floor `8 ε |Γ(1-s)/2π| ∫|f|` of the cancelling integral.
    pub roundoff: f64,
}

/// `(-x)^{s-1} / (e^x - 1)` with the principal logarithm of `-x`, so the
/// cut in `x` runs along the positive real axis.
pub fn hankel_integrand(x: ComplexValue, s: ComplexValue) -> Result<ComplexValue, NumericError> {
    if x.im == 0.0 && x.re >= 0.0 {
        return Err(NumericError::OnBranchCut(x));
    }
    if x.re.abs() < 1e-14 {
        let k = (x.im / (2.0 * PI)).round();
        if k != 0.0 && (x.im - 2.0 * PI * k).abs() < 1e-12 {
            return Err(NumericError::AtPole(x));
        }
    }
    let power = ((s - 1.0) * (-x).ln()).exp();
    let denom = x.exp() - 1.0;
    if denom.norm() == 0.0 {
        return Err(NumericError::AtPole(x));
    }
    ensure_finite(power / denom, x)
}

pub fn zeta_hankel(s: ComplexValue, contour: &ContourSpec) -> Result<ComplexValue, NumericError> {
    zeta_hankel_detailed(s, contour).map(|r| r.zeta)
}

/// Evaluates ζ(s) on the contour, doubling the panel counts until two
/// successive values agree within `contour.tolerance · max(1, |ζ|)`.
pub fn zeta_hankel_detailed(
    s: ComplexValue,
    contour: &ContourSpec,
) -> Result<HankelResult, NumericError> {
    contour.validate()?;
    let nearest = s.re.round();
    if nearest >= 1.0 && (s - nearest).norm() < 0.1 {
        return Err(NumericError::TooCloseToPositiveIntegerPole(s));
    }
    let prefactor = -gamma_complex(Complex64::new(1.0, 0.0) - s)? / Complex64::new(0.0, 2.0 * PI);
    let x_max = match contour.x_max {
        Some(x) => x,
        None => auto_x_max(s, contour.radius, prefactor.norm())?,
    };

    let rule = GaussLegendre::new(contour.nodes_per_panel);
    let (mut panels_ray, mut panels_arc) = (contour.panels_ray, contour.panels_arc);
    let mut integral = contour_integral(s, contour.radius, x_max, &rule, panels_ray, panels_arc)?;
    let mut zeta = prefactor * integral;
    // for large |Im s| the integral cancels heavily; no refinement can beat
    // the rounding in the sum of |f|
    let floor = ROUNDOFF_FACTOR
        * f64::EPSILON
        * prefactor.norm()
        * absolute_integral(s, contour.radius, x_max, &rule, panels_ray, panels_arc)?;
    let mut last_change = f64::INFINITY;
    for _ in 0..MAX_REFINEMENTS {
        panels_ray *= 2;
        panels_arc *= 2;
        let refined = contour_integral(s, contour.radius, x_max, &rule, panels_ray, panels_arc)?;
        let refined_zeta = prefactor * refined;
        last_change = (refined_zeta - zeta).norm();
        integral = refined;
        zeta = refined_zeta;
        let scale = zeta.norm().max(1.0);
        if last_change <= (contour.tolerance * scale).max(floor) {
            if floor > MAX_ROUNDOFF * scale {
                return Err(NumericError::OutOfValidatedRange(
                    s,
                    format!("contour integral cancels to a rounding floor of {floor:e}"),
                ));
            }
            return Ok(HankelResult {
                zeta: ensure_finite(zeta, s)?,
                integral,
                x_max,
                panels_ray,
                panels_arc,
                last_change,
                roundoff: floor,
            });
        }
    }
    Err(NumericError::QuadratureNotConverged(last_change))
}

/// The raw contour integral `I(s)` with fixed discretization.
pub(crate) fn contour_integral(
    s: Complex64,
    radius: f64,
    x_max: f64,
    rule: &GaussLegendre,
    panels_ray: usize,
    panels_arc: usize,
) -> Result<Complex64, NumericError> {
    let upper = rule.integrate(0.0, x_max, panels_ray, |t| {
        hankel_integrand(Complex64::new(t, radius), s)
    })?;
    let lower = rule.integrate(0.0, x_max, panels_ray, |t| {
        hankel_integrand(Complex64::new(t, -radius), s)
    })?;
    let arc = rule.integrate(0.5 * PI, 1.5 * PI, panels_arc, |theta| {
        let x = Complex64::from_polar(radius, theta);
        Ok(hankel_integrand(x, s)? * Complex64::new(0.0, 1.0) * x)
    })?;
    // the upper ray runs from x_max back to 0
    Ok(lower - upper + arc)
}

/// `∫_γ |f| |dx|` with the same discretization.
fn absolute_integral(
    s: Complex64,
    radius: f64,
    x_max: f64,
    rule: &GaussLegendre,
    panels_ray: usize,
    panels_arc: usize,
) -> Result<f64, NumericError> {
    let ray = |offset: f64| {
        rule.integrate(0.0, x_max, panels_ray, |t| {
            Ok::<_, NumericError>(hankel_integrand(Complex64::new(t, offset), s)?.norm().into())
        })
    };
    let arc = rule.integrate(0.5 * PI, 1.5 * PI, panels_arc, |theta| {
        let x = Complex64::from_polar(radius, theta);
        Ok::<_, NumericError>((hankel_integrand(x, s)?.norm() * radius).into())
    })?;
    Ok(ray(radius)?.re + ray(-radius)?.re + arc.re)
}

/// Smallest ray length, starting from `max(40, 10 + 2|s|)`, past which
/// the neglected tail is below `TAIL_TARGET` once scaled into ζ.
fn auto_x_max(s: Complex64, radius: f64, prefactor: f64) -> Result<f64, NumericError> {
    let mut x = (10.0 + 2.0 * s.norm()).max(40.0);
    while x <= X_MAX_LIMIT {
        let upper = hankel_integrand(Complex64::new(x, radius), s)?.norm();
        let lower = hankel_integrand(Complex64::new(x, -radius), s)?.norm();
        // ∫_x^∞ t^a e^{-t} dt ≈ t^a e^{-t} (1 + |a|/t) for the tail of each ray
        let tail = (upper + lower) * (1.0 + (s.re - 1.0).abs() / x) * prefactor;
        if tail < TAIL_TARGET {
            return Ok(x);
        }
        x += 5.0;
    }
    Err(NumericError::OutOfValidatedRange(
        s,
        "contour tail does not decay before exp overflows".into(),
    ))
}
