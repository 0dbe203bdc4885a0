//! Abel sums of the alternating power series `A_m = 1^m - 2^m + 3^m - ...`.
//!
//! The exact route differentiates the generating function
//! `Σ (-1)^{k+1} x^k = 1 - 1/(1+x)` with `θ = x d/dx` and sets `x = 1`.
//! It is checked against the Bernoulli closed form, against a numeric
//! limit `x → 1⁻`, and against the alternating Euler–Maclaurin expansion.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::bernoulli::{bernoulli_generating_function, BernoulliTable};
use crate::exact::{factorial, int, pow2, sign_pow, BigRational};
use crate::poly::{Polynomial, RationalFunction};
use crate::series::LaurentSeries;

/// Largest power handled by the numeric oracle.
pub const NUMERIC_ORACLE_MAX_M: u32 = 8;

/// Fraction bits of the fixed-point accumulator in the numeric oracle.
const FIXED_POINT_BITS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelError {
    #[error("Abel sum A_{m}: operator route gives {operator}, closed form gives {closed}")]
    InternalInconsistency {
        m: u32,
        operator: String,
        closed: String,
    },
    #[error("numeric Abel oracle supports m <= {NUMERIC_ORACLE_MAX_M}, got {0}")]
    NumericOracleRange(u32),
}

/// `1/(1+x)`.
pub fn reciprocal_one_plus_x() -> RationalFunction {
    RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 1]))
}

pub fn apply_euler_operator(f: &RationalFunction, m: u32) -> RationalFunction {
    f.apply_euler_operator(m)
}

/// `θ^m (1/(1+x))`, memoized across calls since each step needs a gcd.
fn iterated_reciprocal(m: u32) -> RationalFunction {
    static CACHE: Mutex<Vec<RationalFunction>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(reciprocal_one_plus_x());
    }
    while cache.len() <= m as usize {
        let next = cache.last().unwrap().euler_operator();
        cache.push(next);
    }
    cache[m as usize].clone()
}

/// `θ^m (1/(1+x))` at `x = 1` for `m = 0..count`.
fn operator_values_at_one(count: u32) -> Vec<BigRational> {
    (0..count)
        .map(|m| {
            iterated_reciprocal(m)
                .eval(&BigRational::one())
                .expect("x = 1 is not a pole")
        })
        .collect()
}

fn abel_from_operator(m: u32, at_one: &BigRational) -> BigRational {
    // θ^m annihilates the constant 1 of 1 - 1/(1+x) once m >= 1
    if m == 0 {
        BigRational::one() - at_one
    } else {
        -at_one.clone()
    }
}

/// `(-1)^m (1 - 2^{m+1}) B_{m+1} / (m+1)`.
pub fn abel_sum_closed_form(m: u32) -> BigRational {
    let table = BernoulliTable::via_recurrence(m as usize + 1);
    sign_pow(u64::from(m)) * (BigRational::one() - pow2(m + 1)) * table.get(m as usize + 1)
        / int(i64::from(m) + 1)
}

/// Exact `A_m`, from the operator route and confirmed by the closed form.
pub fn abel_sum_exact(m: u32) -> Result<BigRational, AbelError> {
    let f = iterated_reciprocal(m);
    let at_one = f.eval(&BigRational::one()).expect("x = 1 is not a pole");
    let operator = abel_from_operator(m, &at_one);
    let closed = abel_sum_closed_form(m);
    if operator != closed {
        return Err(AbelError::InternalInconsistency {
            m,
            operator: operator.to_string(),
            closed: closed.to_string(),
        });
    }
    Ok(operator)
}

/// `ζ(-m) = A_m / (1 - 2^{m+1})`.
pub fn zeta_neg_via_abel(m: u32) -> Result<BigRational, AbelError> {
    Ok(abel_sum_exact(m)? / (BigRational::one() - pow2(m + 1)))
}

/// `Σ_{n≥0} (2^{n+1}-1) B_{n+1}/(n+1)! f^{(n)}(x)`: the alternating
/// Euler–Maclaurin expansion with unit step, valued as the Abel sum of
/// `-f(x) + f(x+1) - f(x+2) + ...`. Exact for polynomial `f`.
pub fn alternating_em_expansion(f: &Polynomial, x: &BigRational) -> BigRational {
    let degree = match f.degree() {
        Some(d) => d,
        None => return BigRational::zero(),
    };
    let table = BernoulliTable::via_recurrence(degree + 1);
    let mut derivative = f.clone();
    let mut total = BigRational::zero();
    for n in 0..=degree {
        let weight = (pow2(n as u32 + 1) - BigRational::one()) * table.get(n + 1)
            / factorial(n as u64 + 1);
        total += weight * derivative.eval(x);
        derivative = derivative.derivative();
    }
    total
}

/// The expansion for `f = x^m` at `x = 0`. For `m ≥ 1` the leading `0^m`
/// vanishes and the value is that of `1^m - 2^m + 3^m - ...`.
pub fn em_alternating_value(m: u32) -> BigRational {
    alternating_em_expansion(&Polynomial::monomial(m as usize), &BigRational::zero())
}

/// Checks `Σ_{m≥0} z^{m+1}/m! · [θ^m 1/(1+x)]_{x=1} = z/(1+e^z)` through
/// `z^order`, and that the right side equals `z/(e^z-1) - 2z/(e^{2z}-1)`.
pub fn exponential_identity_check(order: i64) -> bool {
    if order < 1 {
        return true;
    }
    let values = operator_values_at_one(order as u32);
    let mut lhs = vec![BigRational::zero()];
    lhs.extend(
        values
            .iter()
            .enumerate()
            .map(|(m, v)| v / factorial(m as u64)),
    );
    let lhs = LaurentSeries::polynomial(lhs, order);

    let one_plus_exp = &LaurentSeries::one(order) + &LaurentSeries::exp(&int(1), order);
    let rhs = one_plus_exp
        .invert()
        .expect("1 + e^z has constant term 2")
        .shift(1)
        .truncate(order);

    // z/(e^{2z}-1) is the Bernoulli function at 2z: rescale coefficient n by 2^n
    let bern = bernoulli_generating_function(order);
    let doubled = LaurentSeries::polynomial(
        (0..=order)
            .map(|n| bern.coeff(n).unwrap() * pow2(n as u32))
            .collect(),
        order,
    );
    let difference = &bern - &doubled;

    lhs == rhs && rhs == difference
}

/// Numeric Abel limit of `Σ (-1)^{k+1} k^m x^k` as `x → 1⁻`.
///
/// The series is summed at `x_j = 1 - 2^{-j}`, `j = 8..=8+steps`, with a
/// 256-bit fixed-point accumulator (the terms reach ~1e30 before the
/// alternation cancels them down to O(1)). Summation stops once the
/// geometric tail is below 1e-14. The samples are then extrapolated to
/// `1 - x = 0` by Neville's scheme.
pub fn abel_numeric_estimate(m: u32, steps: u32) -> Result<f64, AbelError> {
    if m > NUMERIC_ORACLE_MAX_M {
        return Err(AbelError::NumericOracleRange(m));
    }
    let samples: Vec<(f64, f64)> = (8..=8 + steps.max(1))
        .map(|j| {
            let h = (-(j as f64)).exp2();
            (h, alternating_power_series(m, j))
        })
        .collect();
    Ok(extrapolate_to_zero(&samples))
}

/// `Σ_{k≥1} (-1)^{k+1} k^m x^k` at `x = 1 - 2^{-j}`.
fn alternating_power_series(m: u32, j: u32) -> f64 {
    let one = BigInt::one() << FIXED_POINT_BITS;
    let mut power = one.clone(); // x^k in fixed point
    let mut acc = BigInt::zero();
    let h = (-(j as f64)).exp2();
    let ln_x = (-h).ln_1p();
    let cutoff = (1e-16 * h).ln();
    let peak = f64::from(m) / h;
    let mut k: u64 = 0;
    loop {
        k += 1;
        power -= &power >> j as usize;
        let term = BigInt::from(k).pow(m) * &power;
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
        let kf = k as f64;
        if kf > peak && f64::from(m) * kf.ln() + kf * ln_x < cutoff {
            break;
        }
    }
    BigRational::new(acc, one).to_f64().unwrap_or(f64::NAN)
}

/// Value at `h = 0` of the interpolating polynomial through `(h_i, y_i)`.
fn extrapolate_to_zero(samples: &[(f64, f64)]) -> f64 {
    let h: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let mut p: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            p[i] = (h[i] * p[i + 1] - h[i + level] * p[i]) / (h[i] - h[i + level]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    #[test]
    fn operator_examples() {
        let f = reciprocal_one_plus_x();
        assert_eq!(apply_euler_operator(&f, 0), f);
        // x · d/dx (1+x)^{-1} = -x (1+x)^{-2}
        assert_eq!(
            apply_euler_operator(&f, 1),
            RationalFunction::new(Polynomial::from_ints(&[0, -1]), Polynomial::from_ints(&[1, 2, 1]))
        );
        // θ(x/(1+x)) = x/(1+x)^2, θ again = x(1-x)/(1+x)^3
        let g = RationalFunction::new(Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[1, 1]));
        assert_eq!(
            apply_euler_operator(&g, 2),
            RationalFunction::new(
                Polynomial::from_ints(&[0, 1, -1]),
                Polynomial::from_ints(&[1, 3, 3, 1])
            )
        );
        // θ^3 (1/(1+x)) = -x(1 - 4x + x^2)/(1+x)^4
        assert_eq!(
            apply_euler_operator(&f, 3),
            RationalFunction::new(
                Polynomial::from_ints(&[0, -1, 4, -1]),
                Polynomial::from_ints(&[1, 4, 6, 4, 1])
            )
        );
    }

    #[test]
    fn denominators_stay_powers_of_one_plus_x() {
        let base = Polynomial::from_ints(&[1, 1]);
        let mut expected = base.clone();
        for m in 1..12 {
            expected = &expected * &base;
            let f = reciprocal_one_plus_x().apply_euler_operator(m);
            assert_eq!(f.denominator(), &expected, "m = {m}");
        }
    }

    #[test]
    fn abel_table() {
        assert_eq!(abel_sum_exact(0).unwrap(), ratio(1, 2));
        assert_eq!(abel_sum_exact(1).unwrap(), ratio(1, 4));
        assert_eq!(abel_sum_exact(2).unwrap(), int(0));
        assert_eq!(abel_sum_exact(3).unwrap(), ratio(-1, 8));
    }

    #[test]
    fn numeric_oracle_examples() {
        assert!((abel_numeric_estimate(1, 4).unwrap() - 0.25).abs() <= 1e-6);
        assert!(abel_numeric_estimate(2, 4).unwrap().abs() <= 1e-6);
        assert!((abel_numeric_estimate(3, 4).unwrap() + 0.125).abs() <= 1e-6);
        assert_eq!(abel_numeric_estimate(9, 4), Err(AbelError::NumericOracleRange(9)));
    }

    #[test]
    fn numeric_oracle_all_small_m() {
        for m in 0..=NUMERIC_ORACLE_MAX_M {
            let exact = crate::exact::rational_to_f64(&abel_sum_exact(m).unwrap());
            let estimate = abel_numeric_estimate(m, 4).unwrap();
            assert!((estimate - exact).abs() <= 1e-6, "m = {m}: {estimate} vs {exact}");
        }
    }

    #[test]
    fn euler_maclaurin_values() {
        assert_eq!(em_alternating_value(1), ratio(1, 4));
        assert_eq!(em_alternating_value(2), int(0));
        assert_eq!(em_alternating_value(3), ratio(-1, 8));
        // with the 0^0 term included the m = 0 value is -1 + 1 - 1 + ... = -1/2
        assert_eq!(em_alternating_value(0), ratio(-1, 2));
        for m in 1..=30 {
            assert_eq!(em_alternating_value(m), abel_sum_exact(m).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn expansion_at_shifted_point() {
        // -1^m + 2^m - 3^m + ... = -A_m
        for m in 0..10u32 {
            let f = Polynomial::monomial(m as usize);
            assert_eq!(alternating_em_expansion(&f, &int(1)), -abel_sum_exact(m).unwrap());
        }
    }

    #[test]
    fn zeta_from_abel() {
        assert_eq!(zeta_neg_via_abel(1).unwrap(), ratio(-1, 12));
        assert_eq!(zeta_neg_via_abel(0).unwrap(), ratio(-1, 2));
        assert_eq!(zeta_neg_via_abel(2).unwrap(), int(0));
        let b = BernoulliTable::via_series(31);
        for m in 0..=30u32 {
            let closed = sign_pow(u64::from(m)) * b.get(m as usize + 1) / int(i64::from(m) + 1);
            assert_eq!(zeta_neg_via_abel(m).unwrap(), closed);
        }
    }

    #[test]
    fn exponential_identity() {
        assert!(exponential_identity_check(20));
        assert!(exponential_identity_check(1));
    }

    #[test]
    fn extrapolation_is_exact_on_polynomials() {
        let samples: Vec<(f64, f64)> = (0..4)
            .map(|i| {
                let h = 0.5f64.powi(i + 2);
                (h, 3.0 - 2.0 * h + h * h * h)
            })
            .collect();
        assert!((extrapolate_to_zero(&samples) - 3.0).abs() < 1e-12);
    }

    fn arb_rational_function() -> impl Strategy<Value = RationalFunction> {
        (
            proptest::collection::vec(-5i64..5, 1..4),
            proptest::collection::vec(-3i64..4, 1..3),
        )
            .prop_map(|(num, den_roots)| {
                let mut den = Polynomial::one();
                for r in den_roots {
                    den = &den * &Polynomial::from_ints(&[r, 1]);
                }
                RationalFunction::new(Polynomial::from_ints(&num), den)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn operator_composes(f in arb_rational_function(), m in 0u32..5) {
            let direct = f.apply_euler_operator(m + 1);
            let stepped = f.apply_euler_operator(m).apply_euler_operator(1);
            prop_assert_eq!(direct, stepped);
        }
    }
}
