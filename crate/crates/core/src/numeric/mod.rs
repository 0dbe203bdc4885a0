//! Double-precision side: complex Gamma, an Euler–Maclaurin ζ, Hankel
//! contour quadrature, and residual checks of the classical identities.

mod checks;
mod em;
mod gamma;
mod hankel;
mod quadrature;

use std::f64::consts::PI;

use thiserror::Error;

pub use checks::{
    cotangent_check, cotangent_tail_bound, funceq_residual, inverted_contour_check,
    inverted_contour_tail_bound,
};
pub use em::{zeta_em, zeta_em_with_estimate, EmEstimate};
pub use gamma::{cos_pi, gamma_complex, sin_pi};
pub use hankel::{hankel_integrand, zeta_hankel, zeta_hankel_detailed, HankelResult};
pub use quadrature::GaussLegendre;

pub use num_complex::Complex64 as ComplexValue;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("Γ has a pole at the nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("s = {0} is too close to a pole")]
    NearPole(ComplexValue),
    #[error("s = {0} is outside the validated range: {1}")]
    OutOfValidatedRange(ComplexValue, String),
    #[error("x = {0} lies on the branch cut of (-x)^(s-1)")]
    OnBranchCut(ComplexValue),
    #[error("x = {0} is a pole of 1/(e^x - 1)")]
    AtPole(ComplexValue),
    #[error("s = {0} is within 0.1 of a positive integer; use the Euler–Maclaurin route")]
    TooCloseToPositiveIntegerPole(ComplexValue),
    #[error("quadrature did not converge: last refinement changed the result by {0:e}")]
    QuadratureNotConverged(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite value while evaluating at {0}")]
    NonFinite(ComplexValue),
}

/// Settings for the Euler–Maclaurin evaluation of ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    /// Upper cutoff for the Dirichlet partial sum.
    pub em_terms_n: usize,
    /// Number of Bernoulli correction terms.
    pub em_terms_j: usize,
    /// Largest acceptable error estimate.
    pub target_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            em_terms_n: 30,
            em_terms_j: 15,
            target_tol: 1e-10,
        }
    }
}

impl NumericConfig {
    pub const MAX_J: usize = 15;
    pub const MIN_TOL: f64 = 1e-13;

    pub fn validate(&self) -> Result<(), NumericError> {
        if self.em_terms_n == 0 {
            return Err(NumericError::InvalidConfig("em_terms_N must be positive".into()));
        }
        if self.em_terms_j == 0 || self.em_terms_j > Self::MAX_J {
            return Err(NumericError::InvalidConfig(format!(
                "em_terms_J must be in 1..={}",
                Self::MAX_J
            )));
        }
        if !(self.target_tol >= Self::MIN_TOL) {
            return Err(NumericError::InvalidConfig(format!(
                "target_tol must be at least {:e}",
                Self::MIN_TOL
            )));
        }
        Ok(())
    }
}

/// Geometry and discretization of the Hankel contour: two rays at
/// `Im x = ±radius` joined by a half circle of that radius through `-radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub radius: f64,
    /// Ray truncation abscissa; `None` picks one from `s`.
    pub x_max: Option<f64>,
    pub panels_ray: usize,
    pub panels_arc: usize,
    pub nodes_per_panel: usize,
    /// Refinement stops once doubling the panels moves ζ by less than this.
    pub tolerance: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            radius: PI,
            x_max: None,
            panels_ray: 16,
            panels_arc: 8,
            nodes_per_panel: 20,
            tolerance: 1e-12,
        }
    }
}

impl ContourSpec {
    pub fn with_radius(radius: f64) -> Self {
        ContourSpec {
            radius,
            ..ContourSpec::default()
        }
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        if !(self.radius > 0.0 && self.radius < 2.0 * PI) {
            return Err(NumericError::InvalidConfig(
                "contour radius must lie strictly between 0 and 2π".into(),
            ));
        }
        if let Some(x_max) = self.x_max {
            if !(x_max > self.radius) {
                return Err(NumericError::InvalidConfig(
                    "x_max must exceed the contour radius".into(),
                ));
            }
        }
        if self.panels_ray == 0 || self.panels_arc == 0 || self.nodes_per_panel < 2 {
            return Err(NumericError::InvalidConfig(
                "panel counts must be positive and nodes_per_panel at least 2".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(NumericError::InvalidConfig("tolerance must be positive".into()));
        }
        Ok(())
    }
}

pub(crate) fn ensure_finite(value: ComplexValue, at: ComplexValue) -> Result<ComplexValue, NumericError> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(NumericError::NonFinite(at))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(NumericConfig::default().validate().is_ok());
        let bad_j = NumericConfig {
            em_terms_j: 16,
            ..NumericConfig::default()
        };
        assert!(bad_j.validate().is_err());
        let bad_tol = NumericConfig {
            target_tol: 1e-14,
            ..NumericConfig::default()
        };
        assert!(bad_tol.validate().is_err());
    }

    #[test]
    fn contour_validation() {
        assert!(ContourSpec::default().validate().is_ok());
        assert!(ContourSpec::with_radius(7.0).validate().is_err());
        assert!(ContourSpec::with_radius(0.0).validate().is_err());
        let short = ContourSpec {
            x_max: Some(2.0),
            ..ContourSpec::default()
        };
        assert!(short.validate().is_err());
    }
}
