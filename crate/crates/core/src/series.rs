//! Truncated Laurent series with exact rational coefficients.
//!
//! Every series carries the exponent through which its coefficients are
//! trusted. Arithmetic only ever keeps or lowers that bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{factorial, BigRational};

/// Working order used by the generating-function routes.
pub const DEFAULT_ORDER: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has no nonzero coefficient through its trusted order")]
    ZeroSeries,
    #[error("coefficient of z^{exponent} requested but the series is only trusted through z^{order}")]
    OutOfTrustedRange { exponent: i64, order: i64 },
}

/// `Σ coeffs[i] · z^(valuation + i)`, trusted through `z^order`.
///
/// After construction the lowest stored coefficient is nonzero; the zero
/// series stores nothing and has `valuation == order + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<BigRational>,
    order: i64,
}

impl LaurentSeries {
    /// Builds a series from coefficients starting at `z^valuation`.
    /// Coefficients past `order` are dropped; missing ones are zero.
    pub fn new(valuation: i64, mut coeffs: Vec<BigRational>, order: i64) -> Self {
        let len = (order - valuation + 1).max(0) as usize;
        coeffs.resize(len, BigRational::zero());
        let mut series = LaurentSeries {
            valuation,
            coeffs,
            order,
        };
        series.normalize();
        series
    }

    pub fn zero(order: i64) -> Self {
        LaurentSeries::new(order + 1, Vec::new(), order)
    }

    pub fn one(order: i64) -> Self {
        LaurentSeries::monomial(BigRational::one(), 0, order)
    }

    /// `c · z^exponent`, trusted through `order`.
    pub fn monomial(c: BigRational, exponent: i64, order: i64) -> Self {
        LaurentSeries::new(exponent, vec![c], order)
    }

    /// Polynomial `Σ coeffs[i] z^i` trusted through `order`.
    pub fn polynomial(coeffs: Vec<BigRational>, order: i64) -> Self {
        LaurentSeries::new(0, coeffs, order)
    }

    /// `e^(a z) = Σ a^n z^n / n!` through `order`.
    pub fn exp(a: &BigRational, order: i64) -> Self {
        assert!(order >= 0, "exp series needs a nonnegative order");
        let mut coeffs = Vec::with_capacity(order as usize + 1);
        let mut term = BigRational::one();
        for n in 0..=order {
            if n > 0 {
                term = term * a / BigRational::from_integer(n.into());
            }
            coeffs.push(term.clone());
        }
        LaurentSeries::new(0, coeffs, order)
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `(exponent, coefficient)` pairs for every stored coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        (self.valuation..).zip(self.coeffs.iter())
    }

    /// Coefficient of `z^m`. Exponents below the valuation are exactly zero;
    /// exponents past the trusted order are an error.
    pub fn coeff(&self, m: i64) -> Result<BigRational, SeriesError> {
        if m > self.order {
            return Err(SeriesError::OutOfTrustedRange {
                exponent: m,
                order: self.order,
            });
        }
        if m < self.valuation {
            return Ok(BigRational::zero());
        }
        Ok(self.coeffs[(m - self.valuation) as usize].clone())
    }

    /// Same series trusted only through `order` (never raises the bound).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        LaurentSeries::new(self.valuation, self.coeffs.clone(), order)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries::new(self.valuation + k, self.coeffs.clone(), self.order + k)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        LaurentSeries::new(self.valuation, coeffs, self.order)
    }

    /// Multiplicative inverse by long division on the leading coefficient.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::ZeroSeries)?;
        let lead_inv = lead.recip();
        let len = self.coeffs.len();
        let mut inv: Vec<BigRational> = Vec::with_capacity(len);
        inv.push(lead_inv.clone());
        for k in 1..len {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[k - j];
                }
            }
            inv.push(-acc * &lead_inv);
        }
        let valuation = -self.valuation;
        let order = valuation + len as i64 - 1;
        Ok(LaurentSeries::new(valuation, inv, order))
    }

    /// Termwise `d/dz`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .terms()
            .map(|(e, c)| c * BigRational::from_integer(e.into()))
            .collect();
        LaurentSeries::new(self.valuation - 1, coeffs, self.order - 1)
    }

    /// Exponential-generating-function reading: `m! · [z^m]`.
    pub fn egf_coeff(&self, m: u64) -> Result<BigRational, SeriesError> {
        Ok(self.coeff(m as i64)? * factorial(m))
    }

    fn normalize(&mut self) {
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.valuation += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.valuation = self.order + 1;
        }
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = self.order.min(rhs.order);
        let valuation = self.valuation.min(rhs.valuation);
        if valuation > order {
            return LaurentSeries::zero(order);
        }
        let coeffs = (valuation..=order)
            .map(|e| {
                self.coeff(e).unwrap_or_else(|_| BigRational::zero())
                    + rhs.coeff(e).unwrap_or_else(|_| BigRational::zero())
            })
            .collect();
        LaurentSeries::new(valuation, coeffs, order)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        LaurentSeries::new(self.valuation, coeffs, self.order)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = (self.order + rhs.valuation).min(rhs.order + self.valuation);
        let valuation = self.valuation + rhs.valuation;
        if valuation > order {
            return LaurentSeries::zero(order);
        }
        let len = (order - valuation + 1) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        LaurentSeries::new(valuation, coeffs, order)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{c} z^{e}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " (trusted to {})", self.order)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use proptest::prelude::*;

    fn poly(coeffs: &[i64], order: i64) -> LaurentSeries {
        LaurentSeries::polynomial(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    /// `(e^z - 1)/z = Σ z^n/(n+1)!` through `order`.
    fn exp_minus_one_over_z(order: i64) -> LaurentSeries {
        (&LaurentSeries::exp(&int(1), order + 1) - &LaurentSeries::one(order + 1)).shift(-1)
    }

    #[test]
    fn exponential_series() {
        let e0 = LaurentSeries::exp(&int(0), 5);
        assert_eq!(e0, LaurentSeries::one(5));
        let e1 = LaurentSeries::exp(&int(1), 3);
        assert_eq!(
            e1,
            LaurentSeries::polynomial(vec![int(1), int(1), ratio(1, 2), ratio(1, 6)], 3)
        );
        assert_eq!(LaurentSeries::exp(&int(2), 2), poly(&[1, 2, 2], 2));
    }

    #[test]
    fn addition() {
        let pole = LaurentSeries::monomial(int(1), -1, 4);
        let sum = &pole + &(-&pole);
        assert!(sum.is_zero());
        assert_eq!(&poly(&[1, 1], 5) + &poly(&[1, -1], 5), poly(&[2], 5));

        let bern = exp_minus_one_over_z(4).invert().unwrap();
        let half_z = LaurentSeries::monomial(ratio(1, 2), 1, 10);
        let even = &bern + &half_z;
        assert_eq!(even.order(), 4);
        assert_eq!(
            even,
            LaurentSeries::polynomial(
                vec![int(1), int(0), ratio(1, 12), int(0), ratio(-1, 720)],
                4
            )
        );
    }

    #[test]
    fn multiplication() {
        assert_eq!(&poly(&[1, 1], 6) * &poly(&[1, -1], 6), poly(&[1, 0, -1], 6));
        let inv_z = LaurentSeries::monomial(int(1), -1, 8);
        let z = LaurentSeries::monomial(int(1), 1, 8);
        assert_eq!((&inv_z * &z).coeff(0).unwrap(), int(1));
        let prod = &LaurentSeries::exp(&int(1), 4) * &LaurentSeries::exp(&int(-1), 4);
        assert_eq!(prod, LaurentSeries::one(4));
    }

    #[test]
    fn inversion() {
        let geometric = poly(&[1, -1], 6).invert().unwrap();
        assert_eq!(geometric, poly(&[1, 1, 1, 1, 1, 1, 1], 6));

        // Bernoulli oracle: B_n from sum_{k<=n} C(n+1,k) B_k = 0
        let mut b = vec![int(1)];
        for n in 1..=6u64 {
            let s: BigRational = (0..n)
                .map(|k| crate::exact::binomial(n + 1, k) * &b[k as usize])
                .sum();
            b.push(-s / int(n as i64 + 1));
        }
        let inv = exp_minus_one_over_z(6).invert().unwrap();
        assert_eq!(inv.order(), 6);
        for n in 0..=6u64 {
            assert_eq!(inv.coeff(n as i64).unwrap(), &b[n as usize] / factorial(n));
        }
        assert_eq!(inv.coeff(1).unwrap(), ratio(-1, 2));
        assert_eq!(inv.coeff(6).unwrap(), ratio(1, 30240));

        let z2 = LaurentSeries::monomial(int(1), 2, 2);
        assert_eq!(z2.invert().unwrap(), LaurentSeries::monomial(int(1), -2, -2));
        assert_eq!(LaurentSeries::zero(5).invert(), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn differentiation() {
        assert_eq!(poly(&[1, 1, 1], 5).derivative(), poly(&[1, 2], 4));
        let d = LaurentSeries::monomial(int(1), -1, 3).derivative();
        assert_eq!(d, LaurentSeries::monomial(int(-1), -2, 2));
        assert!(poly(&[7], 3).derivative().is_zero());
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(poly(&[1, 3], 4).coeff(1).unwrap(), int(3));
        let minus_one = &LaurentSeries::exp(&int(-1), 12) - &LaurentSeries::one(12);
        let g = minus_one.invert().unwrap();
        assert_eq!(g.valuation(), -1);
        assert_eq!(g.coeff(-1).unwrap(), int(-1));
        assert_eq!(g.coeff(0).unwrap(), ratio(-1, 2));
        assert_eq!(g.coeff(1).unwrap(), ratio(-1, 12));
        assert_eq!(
            poly(&[1, 3], 4).coeff(5),
            Err(SeriesError::OutOfTrustedRange {
                exponent: 5,
                order: 4
            })
        );
        assert_eq!(poly(&[0, 0, 3], 4).coeff(1).unwrap(), int(0));
    }

    #[test]
    fn rendering() {
        let s = LaurentSeries::new(-1, vec![int(-1), ratio(1, 2)], 1);
        assert_eq!(s.to_string(), "-1 z^-1 + 1/2 z^0 (trusted to 1)");
        assert_eq!(LaurentSeries::zero(3).to_string(), "0 (trusted to 3)");
    }

    fn arb_series(lead_nonzero: bool) -> impl Strategy<Value = LaurentSeries> {
        (
            -3i64..3,
            proptest::collection::vec((-20i64..20, 1i64..6), 8),
            1i64..20,
        )
            .prop_map(move |(v, cs, lead)| {
                let mut coeffs: Vec<BigRational> =
                    cs.into_iter().map(|(p, q)| ratio(p, q)).collect();
                if lead_nonzero {
                    coeffs[0] = int(lead);
                }
                LaurentSeries::new(v, coeffs, v + 7)
            })
    }

    fn agree_through(a: &LaurentSeries, b: &LaurentSeries) -> bool {
        let order = a.order().min(b.order());
        let low = a.valuation().min(b.valuation()).min(order);
        (low..=order).all(|e| a.coeff(e).unwrap() == b.coeff(e).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(false), b in arb_series(false), c in arb_series(false)) {
            prop_assert!(agree_through(&(&(&a + &b) + &c), &(&a + &(&b + &c))));
            prop_assert!(agree_through(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
            prop_assert!(agree_through(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
            prop_assert!(agree_through(&(&a * &b), &(&b * &a)));
        }

        #[test]
        fn double_inversion(a in arb_series(true)) {
            let back = a.invert().unwrap().invert().unwrap();
            prop_assert_eq!(back.order(), a.order());
            prop_assert!(agree_through(&back, &a));
        }

        #[test]
        fn inverse_is_inverse(a in arb_series(true)) {
            let prod = &a * &a.invert().unwrap();
            prop_assert!(agree_through(&prod, &LaurentSeries::one(prod.order())));
        }

        #[test]
        fn leibniz_rule(a in arb_series(false), b in arb_series(false)) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert!(agree_through(&lhs, &rhs));
        }
    }
}
