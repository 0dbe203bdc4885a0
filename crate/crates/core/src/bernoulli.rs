//! Bernoulli numbers, computed two independent ways, plus exact power sums.
//!
//! Convention: `z/(e^z - 1) = Σ B_n z^n / n!`, so `B_1 = -1/2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, int, BigRational};
use crate::series::LaurentSeries;

/// `B_0 ..= B_max_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `B_n`. Panics when `n` exceeds the table.
    pub fn get(&self, n: usize) -> &BigRational {
        &self.values[n]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Series reading: `B_n = n! · [z^n] (z / (e^z - 1))`.
    pub fn via_series(max_index: usize) -> Self {
        let order = max_index as i64;
        let generating = bernoulli_generating_function(order);
        let values = (0..=max_index as u64)
            .map(|n| generating.egf_coeff(n).expect("within trusted order"))
            .collect();
        BernoulliTable { values }
    }

    /// Recurrence `Σ_{k=0}^{n} C(n+1, k) B_k = 0`, `B_0 = 1`.
    pub fn via_recurrence(max_index: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        for n in 1..=max_index as u64 {
            let partial: BigRational = values
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(k, b)| binomial(n + 1, k as u64) * b)
                .sum();
            values.push(-partial / int(n as i64 + 1));
        }
        BernoulliTable { values }
    }
}

/// `z/(e^z - 1)` trusted through `z^order`, as the inverse of `Σ z^n/(n+1)!`.
pub fn bernoulli_generating_function(order: i64) -> LaurentSeries {
    let e = LaurentSeries::exp(&BigRational::one(), order + 1);
    let quotient = (&e - &LaurentSeries::one(order + 1)).shift(-1);
    quotient
        .invert()
        .expect("(e^z - 1)/z has constant term 1")
}

/// Checks that `z/(e^z - 1) + z/2` has only even powers through `order`.
pub fn even_part_check(order: i64) -> bool {
    let peeled = &bernoulli_generating_function(order)
        + &LaurentSeries::monomial(BigRational::new(1.into(), 2.into()), 1, order);
    (1..=order)
        .step_by(2)
        .all(|e| peeled.coeff(e).map(|c| c.is_zero()).unwrap_or(false))
}

/// Exact `S_m(n) = Σ_{k=1}^{n} k^m`.
///
/// For `f(x) = x^m` the Euler–Maclaurin expansion
/// `Σ_{k=0}^{n-1} f(k) = ∫_0^n f + Σ_{j≥1} B_j/j! (f^{(j-1)}(n) - f^{(j-1)}(0))`
/// stops after `j = m + 1`, so it is an identity.
pub fn faulhaber_sum(m: u32, n: u64) -> BigRational {
    let table = BernoulliTable::via_recurrence(m as usize + 1);
    let n_q = BigRational::from_integer(BigInt::from(n));
    let power = |e: u32| num_traits::pow(n_q.clone(), e as usize);

    let integral = power(m + 1) / int(i64::from(m) + 1);
    let mut corrections = BigRational::zero();
    for j in 1..=m + 1 {
        // f^{(j-1)}(x) = m!/(m-j+1)! x^{m-j+1}
        let falling = factorial(u64::from(m)) / factorial(u64::from(m + 1 - j));
        let at_n = &falling * power(m + 1 - j);
        let at_zero = if j == m + 1 { falling } else { BigRational::zero() };
        corrections += table.get(j as usize) / factorial(u64::from(j)) * (at_n - at_zero);
    }
    let below_n = integral + corrections;
    // below_n sums k = 0..n-1; move the k = 0 term (0^0 = 1) out and n^m in
    let zero_term = if m == 0 { BigRational::one() } else { BigRational::zero() };
    below_n - zero_term + power(m)
}
