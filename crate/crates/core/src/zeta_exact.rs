//! Exact classical values of ζ by every available route, and exact checks
//! of the functional equation at integer points.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abel::{self, AbelError};
use crate::bernoulli::{bernoulli_generating_function, BernoulliTable};
use crate::exact::{factorial, int, pow2, sign_pow, BigRational, ExactError, PiValue};
use crate::series::LaurentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("ζ has a pole at s = 1")]
    Pole,
    #[error("{0} is not a classical point (need an integer <= 0 or an even integer >= 2)")]
    NotClassical(i64),
    #[error("argument {0} is not an even positive integer")]
    ArgumentNotEvenPositive(i64),
    #[error(transparent)]
    Abel(#[from] AbelError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `(-1)^n B_{n+1}/(n+1)` and `(-1)^{n-1}(2π)^{2n}B_{2n}/(2(2n)!)`.
    ClosedForm,
    /// Coefficient of the residue at the origin in the contour integrand.
    ResidueSeries,
    /// Coefficients of `1/(e^{-z}-1) + 1/z`.
    GeneratingFunction,
    /// Abel sums of the alternating series.
    AbelSummation,
    /// `2 cos(πs/2) Γ(s) ζ(s) = (2π)^s ζ(1-s)` solved for the wanted side.
    FunctionalEquation,
}

impl Route {
    pub fn label(self) -> &'static str {
        match self {
            Route::ClosedForm => "closed",
            Route::ResidueSeries => "residue",
            Route::GeneratingFunction => "genfun",
            Route::AbelSummation => "abel",
            Route::FunctionalEquation => "funceq",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// ζ at a classical point together with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalValue {
    pub argument: i64,
    pub value: PiValue,
    pub route: Route,
}

impl ClassicalValue {
    fn nonpositive(n: u32, value: BigRational, route: Route) -> Self {
        ClassicalValue {
            argument: -i64::from(n),
            value: PiValue::rational(value),
            route,
        }
    }
}

/// `(-1)^n B_{n+1}/(n+1)`.
pub fn zeta_nonpositive(n: u32) -> ClassicalValue {
    let table = BernoulliTable::via_recurrence(n as usize + 1);
    let value = sign_pow(u64::from(n)) * table.get(n as usize + 1) / int(i64::from(n) + 1);
    ClassicalValue::nonpositive(n, value, Route::ClosedForm)
}

/// `lim_{x→-n} sin(πx) Γ(x) = π/n!`.
pub fn sin_gamma_limit_exact(n: u32) -> PiValue {
    PiValue::new(factorial(u64::from(n)).recip(), 1)
}

/// Residue route for `ζ(-n)`.
///
/// The contour integral at `s = -n` equals `2πi (-1)^{n-1} c` with `c` the
/// coefficient of `x^{n+1}` in `x/(e^x - 1)`; the same integral equals
/// `-2i · sin(-πn)Γ(-n) · ζ(-n)`. The factors of `i` cancel, leaving a
/// ratio of two π-monomials.
pub fn zeta_neg_via_residue(n: u32) -> ClassicalValue {
    let order = i64::from(n) + 1;
    let c = bernoulli_generating_function(order)
        .coeff(order)
        .expect("within trusted order");
    let contour = PiValue::new(int(2) * sign_pow(u64::from(n) + 1) * c, 1);
    let prefactor = sin_gamma_limit_exact(n).scale(&int(-2));
    let value = contour
        .div(&prefactor)
        .expect("both sides carry exactly one power of π");
    ClassicalValue {
        argument: -i64::from(n),
        value,
        route: Route::ResidueSeries,
    }
}

/// `1/(e^{-z} - 1)` trusted through `z^order`.
fn inverse_exp_minus_one(order: i64) -> LaurentSeries {
    let denominator =
        &LaurentSeries::exp(&int(-1), order + 2) - &LaurentSeries::one(order + 2);
    denominator.invert().expect("e^{-z} - 1 is not the zero series")
}

/// `1/(e^{-z}-1) + 1/z`: the pole-free generating function `Σ ζ(-m) z^m/m!`.
pub fn zeta_generating_function(order: i64) -> LaurentSeries {
    let inv = inverse_exp_minus_one(order);
    &inv + &LaurentSeries::monomial(BigRational::one(), -1, inv.order())
}

/// `ζ(-m)` for `m = 0..order` read off the generating function.
pub fn zeta_neg_via_generating_function(order: u32) -> Vec<ClassicalValue> {
    let g = zeta_generating_function(i64::from(order));
    (0..order)
        .map(|m| {
            let value = g.egf_coeff(u64::from(m)).expect("within trusted order");
            ClassicalValue::nonpositive(m, value, Route::GeneratingFunction)
        })
        .collect()
}

/// Checks `(1 - e^{nz})/(e^{-z} - 1) = Σ_m S_m(n) z^m/m!` for `m ≤ max_m`,
/// with the power sums `S_m(n)` taken by brute force.
pub fn finite_g_check(n: u64, max_m: u32) -> bool {
    let order = i64::from(max_m) + 2;
    let numerator =
        &LaurentSeries::one(order) - &LaurentSeries::exp(&BigRational::from_integer(n.into()), order);
    let g = &numerator * &inverse_exp_minus_one(order);
    (0..=max_m).all(|m| {
        let brute: num_bigint::BigInt = (1..=n).map(|k| num_bigint::BigInt::from(k).pow(m)).sum();
        g.egf_coeff(u64::from(m)).ok() == Some(BigRational::from_integer(brute))
    })
}

/// Checks `(e^{-z}+1)/(e^{-z}-1) + 2/z = 2 Σ ζ(-2m-1) z^{2m+1}/(2m+1)!`
/// through `z^order`, including that every even power vanishes. Also checks
/// the split `1/(e^{-z}-1) - 1/(e^z-1)` of the left side.
pub fn odd_genfun_check(order: i64) -> bool {
    let work = order + 2;
    let plus = &LaurentSeries::exp(&int(-1), work) + &LaurentSeries::one(work);
    let inv_minus = inverse_exp_minus_one(work);
    let odd = &(&plus * &inv_minus) + &LaurentSeries::monomial(int(2), -1, work);
    if odd.order() < order {
        return false;
    }

    // 1/(e^z - 1) is the Bernoulli function divided by z
    let inv_plain = bernoulli_generating_function(work + 1).shift(-1);
    let split = &(&inv_minus - &inv_plain) + &LaurentSeries::monomial(int(2), -1, work);

    (-1..=order).all(|e| {
        let expected = if e >= 1 && e % 2 == 1 {
            let m = ((e - 1) / 2) as u32;
            let zeta = zeta_nonpositive(2 * m + 1).value.coefficient().clone();
            int(2) * zeta / factorial(e as u64)
        } else {
            BigRational::zero()
        };
        odd.coeff(e).ok() == Some(expected.clone()) && split.coeff(e).ok() == Some(expected)
    })
}

/// `ζ(2n) = (-1)^{n-1} (2π)^{2n} B_{2n} / (2 (2n)!)`.
pub fn zeta_even_positive(n: u32) -> ClassicalValue {
    assert!(n >= 1, "ζ(2n) needs n >= 1");
    let two_n = 2 * n;
    let table = BernoulliTable::via_recurrence(two_n as usize);
    let coefficient = sign_pow(u64::from(n) - 1) * pow2(two_n) * table.get(two_n as usize)
        / (int(2) * factorial(u64::from(two_n)));
    ClassicalValue {
        argument: i64::from(two_n),
        value: PiValue::new(coefficient, two_n),
        route: Route::ClosedForm,
    }
}

/// `ζ(2n)` from a value of `ζ(1-2n)` through
/// `ζ(2n) = (2π)^{2n-1} (-1)^n π / (2n-1)! · ζ(1-2n)`.
pub fn zeta_even_from_reflection(n: u32, zeta_one_minus: &BigRational) -> PiValue {
    let two_n = 2 * n;
    let scale = pow2(two_n - 1) * sign_pow(u64::from(n)) / factorial(u64::from(two_n) - 1);
    PiValue::new(scale * zeta_one_minus, two_n)
}

/// `ζ(2m+2)` from `ζ(-2m-1)` through the odd generating-function identity
/// `2 ζ(-2m-1)/(2m+1)! = (-1)^{m+1} ζ(2m+2) / (2^{2m} π^{2m+2})`.
pub fn zeta_even_from_odd_genfun(m: u32, zeta_neg_odd: &BigRational) -> PiValue {
    let coefficient = int(2) * zeta_neg_odd / factorial(2 * u64::from(m) + 1)
        * sign_pow(u64::from(m) + 1)
        * pow2(2 * m);
    PiValue::new(coefficient, 2 * m + 2)
}

/// `ζ(2n)` by the reflection formula applied to `ζ(1-2n)` from the residue route.
pub fn zeta_even_via_funceq(n: u32) -> ClassicalValue {
    let odd = zeta_neg_via_residue(2 * n - 1);
    ClassicalValue {
        argument: 2 * i64::from(n),
        value: zeta_even_from_reflection(n, odd.value.coefficient()),
        route: Route::FunctionalEquation,
    }
}

/// `ζ(-n)` for `n ≥ 1` from `s = n + 1` in `2 cos(πs/2) Γ(s) ζ(s) = (2π)^s ζ(1-s)`.
/// For even `n` the cosine vanishes; for odd `n` the closed-form `ζ(n+1)` is used.
pub fn zeta_neg_via_funceq(n: u32) -> Result<ClassicalValue, ZetaError> {
    if n == 0 {
        // s = 1 sits on the pole of ζ
        return Err(ZetaError::NotClassical(0));
    }
    let value = if n % 2 == 0 {
        BigRational::zero()
    } else {
        let k = (n + 1) / 2;
        let lhs = zeta_even_positive(k)
            .value
            .scale(&(int(2) * sign_pow(u64::from(k)) * factorial(u64::from(n))));
        let quotient = lhs.div(&PiValue::new(pow2(n + 1), n + 1))?;
        quotient.coefficient().clone()
    };
    Ok(ClassicalValue::nonpositive(n, value, Route::FunctionalEquation))
}

/// Exact check of `2 ζ(-2m-1)/(2m+1)! = (-1)^{m+1} ζ(2m+2)/(2^{2m} π^{2m+2})`.
pub fn simple_funceq_check(m: u32) -> bool {
    let lhs = PiValue::rational(
        int(2) * zeta_nonpositive(2 * m + 1).value.coefficient() / factorial(2 * u64::from(m) + 1),
    );
    let even = zeta_even_positive(m + 1).value;
    let divisor = PiValue::new(pow2(2 * m), 2 * m + 2);
    match even.div(&divisor) {
        Ok(quotient) => lhs == quotient.scale(&sign_pow(u64::from(m) + 1)),
        Err(_) => false,
    }
}

/// Exact check of `2 cos(πs/2) Γ(s) ζ(s) = (2π)^s ζ(1-s)` at even `s ≥ 2`.
pub fn funceq_exact_check(s: i64) -> Result<bool, ZetaError> {
    if s < 2 || s % 2 != 0 {
        return Err(ZetaError::ArgumentNotEvenPositive(s));
    }
    let n = (s / 2) as u32;
    // cos(πn) = (-1)^n, Γ(2n) = (2n-1)!
    let lhs = zeta_even_positive(n)
        .value
        .scale(&(int(2) * sign_pow(u64::from(n)) * factorial(s as u64 - 1)));
    let rhs = PiValue::new(pow2(s as u32), s as u32)
        .mul(&zeta_nonpositive(s as u32 - 1).value);
    Ok(lhs == rhs)
}

/// ζ at a classical point by the requested route.
///
/// Nonpositive arguments use the route directly. Even positive arguments
/// take `ζ(1-2n)` from the route and carry it across the functional
/// equation: the residue and Abel routes by the reflection formula, the
/// generating-function route by its odd-series identity.
pub fn classical_value(argument: i64, route: Route) -> Result<ClassicalValue, ZetaError> {
    if argument == 1 {
        return Err(ZetaError::Pole);
    }
    if argument <= 0 {
        let n = u32::try_from(-argument).map_err(|_| ZetaError::NotClassical(argument))?;
        return Ok(match route {
            Route::ClosedForm => zeta_nonpositive(n),
            Route::ResidueSeries => zeta_neg_via_residue(n),
            Route::GeneratingFunction => zeta_neg_via_generating_function(n + 1)
                .pop()
                .expect("n + 1 entries"),
            Route::AbelSummation => {
                ClassicalValue::nonpositive(n, abel::zeta_neg_via_abel(n)?, Route::AbelSummation)
            }
            Route::FunctionalEquation => zeta_neg_via_funceq(n)?,
        });
    }
    if argument % 2 != 0 {
        return Err(ZetaError::NotClassical(argument));
    }
    let n = u32::try_from(argument / 2).map_err(|_| ZetaError::NotClassical(argument))?;
    let value = match route {
        Route::ClosedForm => return Ok(zeta_even_positive(n)),
        Route::FunctionalEquation => return Ok(zeta_even_via_funceq(n)),
        Route::ResidueSeries => {
            zeta_even_from_reflection(n, zeta_neg_via_residue(2 * n - 1).value.coefficient())
        }
        Route::AbelSummation => {
            zeta_even_from_reflection(n, &abel::zeta_neg_via_abel(2 * n - 1)?)
        }
        Route::GeneratingFunction => {
            let odd = classical_value(1 - argument, Route::GeneratingFunction)?;
            zeta_even_from_odd_genfun(n - 1, odd.value.coefficient())
        }
    };
    Ok(ClassicalValue {
        argument,
        value,
        route,
    })
}
