use std::sync::OnceLock;

use num_complex::Complex64;

use super::{ensure_finite, ComplexValue, NumericConfig, NumericError};
use crate::bernoulli::BernoulliTable;
use crate::exact::{factorial, rational_to_f64};

/// Imaginary parts beyond this are outside the validated range.
const MAX_IM: f64 = 50.0;

/// `B_{2j}/(2j)!` for `j = 0..=MAX_J + 1`.
fn bernoulli_weights() -> &'static [f64] {
    static WEIGHTS: OnceLock<Vec<f64>> = OnceLock::new();
    WEIGHTS.get_or_init(|| {
        let top = 2 * (NumericConfig::MAX_J + 1);
        let table = BernoulliTable::via_recurrence(top);
        (0..=NumericConfig::MAX_J + 1)
            .map(|j| rational_to_f64(&(table.get(2 * j) / factorial(2 * j as u64))))
            .collect()
    })
}

/// A value of ζ with the cutoff used and an a-priori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmEstimate {
    pub value: ComplexValue,
    pub cutoff: usize,
    pub error_estimate: f64,
}

/// ζ(s) by Euler–Maclaurin summation; see [`zeta_em_with_estimate`].
pub fn zeta_em(s: ComplexValue, cfg: &NumericConfig) -> Result<ComplexValue, NumericError> {
    zeta_em_with_estimate(s, cfg).map(|e| e.value)
}

/// ζ(s) ≈ Σ_{k<N} k^{-s} + N^{1-s}/(s-1) + N^{-s}/2
///        + Σ_{j=1}^{J} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1}.
///
/// The cutoff `N` is chosen in `2..=max(em_terms_n, 2|Im s|)` to minimize
/// the sum of a round-off estimate (the partial sum grows like
/// `N^{1-Re s}` and cancels down to ζ) and the first omitted correction.
/// Fails with `OutOfValidatedRange` when that estimate exceeds `target_tol`.
pub fn zeta_em_with_estimate(
    s: ComplexValue,
    cfg: &NumericConfig,
) -> Result<EmEstimate, NumericError> {
    cfg.validate()?;
    if (s - 1.0).norm() < 1e-6 {
        return Err(NumericError::NearPole(s));
    }
    let j_terms = cfg.em_terms_j;
    if s.re <= -(2.0 * j_terms as f64 - 1.0) {
        return Err(NumericError::OutOfValidatedRange(
            s,
            format!("Re s must exceed -{}", 2 * j_terms - 1),
        ));
    }
    if s.im.abs() > MAX_IM {
        return Err(NumericError::OutOfValidatedRange(
            s,
            format!("|Im s| must not exceed {MAX_IM}"),
        ));
    }

    let n_max = cfg.em_terms_n.max((2.0 * s.im.abs()).ceil() as usize).max(2);
    let (cutoff, error_estimate) = (2..=n_max)
        .map(|n| (n, error_estimate(s, n, j_terms)))
        .fold((n_max, f64::INFINITY), |best, cand| {
            if cand.1 <= best.1 {
                cand
            } else {
                best
            }
        });
    if !(error_estimate <= cfg.target_tol) {
        return Err(NumericError::OutOfValidatedRange(
            s,
            format!("estimated error {error_estimate:e} exceeds target {:e}", cfg.target_tol),
        ));
    }
    let value = ensure_finite(em_sum(s, cutoff, j_terms), s)?;
    Ok(EmEstimate {
        value,
        cutoff,
        error_estimate,
    })
}

fn em_sum(s: Complex64, n: usize, j_terms: usize) -> Complex64 {
    let weights = bernoulli_weights();
    let mut partial = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        partial += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = |e: Complex64| (e * ln_n).exp();
    let mut total = partial + n_pow(1.0 - s) / (s - 1.0) + n_pow(-s) * 0.5;

    // rising = s (s+1) … (s+2j-2)
    let mut rising = s;
    for j in 1..=j_terms {
        if j > 1 {
            rising *= (s + (2 * j - 3) as f64) * (s + (2 * j - 2) as f64);
        }
        let exponent = -s - (2 * j - 1) as f64;
        total += rising * weights[j] * n_pow(exponent);
    }
    total
}

fn error_estimate(s: Complex64, n: usize, j_terms: usize) -> f64 {
    let weights = bernoulli_weights();
    let nf = n as f64;
    let sigma = s.re;
    // |s (s+1) … (s+2J)|
    let rising: f64 = (0..=2 * j_terms).map(|i| (s + i as f64).norm()).product();
    let truncation =
        (weights[j_terms + 1] * rising).abs() * nf.powf(-sigma - (2 * j_terms + 1) as f64);

    // round-off scales with the largest quantity that has to cancel
    let partial: f64 = (1..n).map(|k| (k as f64).powf(-sigma)).sum();
    let mut largest = partial.max(nf.powf(1.0 - sigma) / (s - 1.0).norm());
    let mut rising = s.norm();
    for j in 1..=j_terms {
        if j > 1 {
            rising *= (s + (2 * j - 3) as f64).norm() * (s + (2 * j - 2) as f64).norm();
        }
        let term = (weights[j] * rising).abs() * nf.powf(-sigma - (2 * j - 1) as f64);
        largest = largest.max(term);
    }
    truncation + 8.0 * f64::EPSILON * largest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, PiValue};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_points() {
        let cfg = NumericConfig::default();
        let z2 = zeta_em(c(2.0, 0.0), &cfg).unwrap();
        let exact = PiValue::new(ratio(1, 6), 2).to_f64(40);
        assert!((z2.re - exact).abs() < 1e-13);
        assert!((z2.re - 1.644_934_066_848_226_4).abs() < 1e-13);
        let z0 = zeta_em(c(0.0, 0.0), &cfg).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-13);
        let zm3 = zeta_em(c(-3.0, 0.0), &cfg).unwrap();
        assert!((zm3.re - 1.0 / 120.0).abs() < 1e-13);
        assert!(zm3.im.abs() < 1e-13);
    }

    #[test]
    fn reference_values() {
        // mpmath.zeta at 30 digits
        let cfg = NumericConfig::default();
        let cases = [
            (c(-0.5, 0.0), c(-0.207_886_224_977_354_57, 0.0)),
            (c(0.5, 3.0), c(0.532_736_670_974_232_9, -0.078_896_513_425_833_38)),
            (c(-2.5, 0.0), c(0.008_516_928_777_850_330_5, 0.0)),
            (c(-2.5, 10.0), c(4.263_590_288_889_194_5, 1.459_816_619_917_562_8)),
            (c(1.5, 0.0), c(2.612_375_348_685_488_3, 0.0)),
        ];
        for (s, expected) in cases {
            let got = zeta_em(s, &cfg).unwrap();
            assert!((got - expected).norm() < 1e-11, "ζ({s}) = {got}, expected {expected}");
        }
    }

    #[test]
    fn rejects_pole_and_range() {
        let cfg = NumericConfig::default();
        assert!(matches!(zeta_em(c(1.0, 0.0), &cfg), Err(NumericError::NearPole(_))));
        assert!(matches!(
            zeta_em(c(-30.0, 0.0), &cfg),
            Err(NumericError::OutOfValidatedRange(..))
        ));
        assert!(matches!(
            zeta_em(c(0.5, 60.0), &cfg),
            Err(NumericError::OutOfValidatedRange(..))
        ));
    }

    #[test]
    fn negative_integers_within_estimate() {
        let cfg = NumericConfig::default();
        for n in 0..=20u32 {
            let exact = crate::zeta_exact::zeta_nonpositive(n).value.to_f64(40);
            let s = c(-f64::from(n), 0.0);
            match zeta_em_with_estimate(s, &cfg) {
                Ok(est) => {
                    let err = (est.value.re - exact).abs();
                    assert!(err <= est.error_estimate, "ζ(-{n}): {err:e} > {:e}", est.error_estimate);
                }
                Err(NumericError::OutOfValidatedRange(..)) => assert!(n > 10, "ζ(-{n}) refused"),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn large_imaginary_parts() {
        // mpmath.zeta
        let cfg = NumericConfig::default();
        let cases = [
            (c(0.5, 40.0), c(0.793_044_952_561_928_7, -1.041_274_614_651_065)),
            (c(0.25, 49.0), c(0.911_617_732_685_433_8, -0.365_589_618_837_544_77)),
            (c(-5.5, 3.0), c(-0.069_023_255_587_797_904, -0.073_051_871_636_278_83)),
        ];
        for (s, expected) in cases {
            let est = zeta_em_with_estimate(s, &cfg).unwrap();
            assert!(est.error_estimate <= cfg.target_tol);
            assert!((est.value - expected).norm() < 1e-10, "ζ({s}) = {}", est.value);
        }
    }
}
