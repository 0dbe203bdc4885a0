//! Exact scalars: arbitrary-precision rationals and π-monomials.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator, so structural equality is
//! value equality.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use num_rational::BigRational;

/// π to 40 significant digits.
pub const PI_DIGITS: &str = "3.141592653589793238462643383279502884197";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot add π^{left} and π^{right} terms with nonzero coefficients")]
    MixedPiPowers { left: u32, right: u32 },
    #[error("division would leave a negative power of π (π^{exponent})")]
    NegativePiPower { exponent: i64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^n` as a rational.
pub fn sign_pow(n: u64) -> BigRational {
    if n % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `2^n` as a rational.
pub fn pow2(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << n as usize)
}

/// Binomial coefficient C(n, k); zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

pub fn factorial(n: u64) -> BigRational {
    BigRational::from_integer(factorial_int(n))
}

pub(crate) fn factorial_int(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let trimmed = text.trim();
    let parsed = BigRational::from_str(trimmed).map_err(|e| format!("invalid rational {trimmed:?}: {e}"))?;
    Ok(parsed)
}

/// An exact value `coefficient · π^pi_exponent`.
///
/// Zero is always stored as `0 · π^0`, so derived equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiValue {
    coefficient: BigRational,
    pi_exponent: u32,
}

impl PiValue {
    pub fn new(coefficient: BigRational, pi_exponent: u32) -> Self {
        let pi_exponent = if coefficient.is_zero() { 0 } else { pi_exponent };
        PiValue {
            coefficient,
            pi_exponent,
        }
    }

    pub fn rational(coefficient: BigRational) -> Self {
        PiValue::new(coefficient, 0)
    }

    pub fn zero() -> Self {
        PiValue::rational(BigRational::zero())
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn pi_exponent(&self) -> u32 {
        self.pi_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn mul(&self, other: &PiValue) -> PiValue {
        PiValue::new(
            &self.coefficient * &other.coefficient,
            self.pi_exponent + other.pi_exponent,
        )
    }

    pub fn scale(&self, factor: &BigRational) -> PiValue {
        PiValue::new(&self.coefficient * factor, self.pi_exponent)
    }

    /// Sum of two values at the same power of π.
    pub fn add(&self, other: &PiValue) -> Result<PiValue, ExactError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_exponent != other.pi_exponent {
            return Err(ExactError::MixedPiPowers {
                left: self.pi_exponent,
                right: other.pi_exponent,
            });
        }
        Ok(PiValue::new(
            &self.coefficient + &other.coefficient,
            self.pi_exponent,
        ))
    }

    pub fn sub(&self, other: &PiValue) -> Result<PiValue, ExactError> {
        self.add(&-other.clone())
    }

    /// Quotient of two π-monomials; the result must not carry a negative power of π.
    pub fn div(&self, other: &PiValue) -> Result<PiValue, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(PiValue::zero());
        }
        let exponent = i64::from(self.pi_exponent) - i64::from(other.pi_exponent);
        if exponent < 0 {
            return Err(ExactError::NegativePiPower { exponent });
        }
        Ok(PiValue::new(
            &self.coefficient / &other.coefficient,
            exponent as u32,
        ))
    }

    /// Evaluates the monomial in double precision using π truncated to
    /// `pi_digits` significant digits (at most 40 are stored).
    ///
    /// The power of π is formed exactly from the truncated decimal, so the
    /// only rounding is the final conversion to `f64`.
    pub fn to_f64(&self, pi_digits: usize) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let pi = truncated_pi(pi_digits);
        let value = &self.coefficient * num_traits::pow(pi, self.pi_exponent as usize);
        rational_to_f64(&value)
    }
}

fn truncated_pi(pi_digits: usize) -> BigRational {
    let digits: String = PI_DIGITS.chars().filter(|c| c.is_ascii_digit()).collect();
    let keep = pi_digits.clamp(1, digits.len());
    let mantissa = BigInt::from_str(&digits[..keep]).expect("literal digits");
    let scale = num_traits::pow(BigInt::from(10), keep - 1);
    BigRational::new(mantissa, scale)
}

impl Neg for PiValue {
    type Output = PiValue;

    fn neg(self) -> PiValue {
        PiValue::new(-self.coefficient, self.pi_exponent)
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exponent {
            0 => write!(f, "{}", self.coefficient),
            1 => write!(f, "{}*pi", self.coefficient),
            k => write!(f, "{}*pi^{}", self.coefficient, k),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PiValueWire {
    coeff: String,
    pi_exp: u32,
}

impl Serialize for PiValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PiValueWire {
            coeff: format_rational(&self.coefficient),
            pi_exp: self.pi_exponent,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PiValueWire::deserialize(deserializer)?;
        let coefficient = parse_rational(&wire.coeff).map_err(serde::de::Error::custom)?;
        Ok(PiValue::new(coefficient, wire.pi_exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use num_traits::Signed;

    fn pascal(n: usize, k: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
        let expected = pascal(30, 15);
        assert_eq!(expected, 155_117_520);
        assert_eq!(binomial(30, 15), int(expected as i64));
        for n in 0..40u64 {
            for k in 0..=n + 1 {
                assert_eq!(binomial(n, k), int(pascal(n as usize, k as usize) as i64));
            }
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        let iterated = (1..=20u64).product::<u64>();
        assert_eq!(iterated, 2_432_902_008_176_640_000);
        assert_eq!(
            factorial(20),
            BigRational::from_integer(BigInt::from(iterated))
        );
    }

    #[test]
    fn pivalue_products() {
        let sixth = PiValue::new(ratio(1, 6), 2);
        assert_eq!(sixth.mul(&PiValue::rational(int(1))), sixth);
        assert_eq!(sixth.mul(&sixth), PiValue::new(ratio(1, 36), 4));
        let a = PiValue::new(ratio(-1, 2), 1);
        let b = PiValue::new(int(4), 1);
        assert_eq!(a.mul(&b), PiValue::new(int(-2), 2));
    }

    #[test]
    fn pivalue_sums() {
        let sixth = PiValue::new(ratio(1, 6), 2);
        let minus = PiValue::new(ratio(-1, 6), 2);
        let sum = sixth.add(&minus).unwrap();
        assert_eq!(sum, PiValue::zero());
        assert_eq!(sum.pi_exponent(), 0);
        assert_eq!(sixth.add(&PiValue::zero()).unwrap(), sixth);
        assert_eq!(
            sixth.add(&PiValue::new(int(1), 4)),
            Err(ExactError::MixedPiPowers { left: 2, right: 4 })
        );
    }

    #[test]
    fn pivalue_division() {
        let z2 = PiValue::new(ratio(1, 6), 2);
        let pi2 = PiValue::new(int(1), 2);
        assert_eq!(z2.div(&pi2).unwrap(), PiValue::rational(ratio(1, 6)));
        assert!(matches!(
            pi2.div(&PiValue::new(int(1), 3)),
            Err(ExactError::NegativePiPower { exponent: -1 })
        ));
        assert_eq!(z2.div(&PiValue::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn canonical_zero() {
        let z = PiValue::new(int(0), 7);
        assert_eq!(z.pi_exponent(), 0);
        assert_eq!(z, PiValue::zero());
    }

    #[test]
    fn float_bridge() {
        // sum_{n<=10^6} 1/n^2 + 1/10^6 - 1/(2*10^12) + 1/(6*10^18), summed small to large
        let n = 1_000_000u64;
        let mut partial = 0.0f64;
        for k in (1..=n).rev() {
            let k = k as f64;
            partial += 1.0 / (k * k);
        }
        let nf = n as f64;
        let oracle = partial + 1.0 / nf - 0.5 / (nf * nf) + 1.0 / (6.0 * nf * nf * nf);
        let value = PiValue::new(ratio(1, 6), 2).to_f64(40);
        assert_eq!(value, 1.6449340668482264);
        assert!((value - oracle).abs() <= 1e-15);
        assert_eq!(PiValue::zero().to_f64(16), 0.0);
        assert_eq!(
            PiValue::rational(ratio(-1, 12)).to_f64(16),
            -0.08333333333333333
        );
    }

    #[test]
    fn float_bridge_pi_squared() {
        let squared = PiValue::new(int(1), 2).to_f64(40);
        let independent = std::f64::consts::PI * std::f64::consts::PI;
        assert!(((squared - independent) / independent).abs() <= 1e-14);
        let high = PiValue::new(ratio(1, 3), 30).to_f64(40);
        let low = PiValue::new(ratio(1, 3), 30).to_f64(16);
        assert!(((high - low) / high).abs() <= 10.0 * f64::EPSILON * 30.0);
    }

    #[test]
    fn serialization_shapes() {
        assert_eq!(format_rational(&ratio(-1, 12)), "-1/12");
        assert_eq!(format_rational(&int(10)), "10");
        assert_eq!(parse_rational(" 3/9 ").unwrap(), ratio(1, 3));
        assert!(parse_rational("1/x").is_err());
        let json = serde_json::to_string(&PiValue::new(ratio(1, 6), 2)).unwrap();
        assert_eq!(json, r#"{"coeff":"1/6","pi_exp":2}"#);
        let back: PiValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, PiValue::new(ratio(1, 6), 2));
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| ratio(p, q))
    }

    fn arb_pivalue() -> impl Strategy<Value = PiValue> {
        (arb_rational(), 0u32..8).prop_map(|(c, k)| PiValue::new(c, k))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), BigRational::one());
            }
        }

        #[test]
        fn normalization_is_idempotent(p in -10_000i64..10_000, q in 1i64..10_000) {
            let once = BigRational::new(BigInt::from(p), BigInt::from(q));
            let twice = BigRational::new(once.numer().clone(), once.denom().clone());
            prop_assert_eq!(&once, &twice);
            prop_assert!(num_integer::Integer::gcd(once.numer(), once.denom()).is_one());
            prop_assert!(once.denom().is_positive());
        }

        #[test]
        fn pivalue_mul_commutes_and_associates(a in arb_pivalue(), b in arb_pivalue(), c in arb_pivalue()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
