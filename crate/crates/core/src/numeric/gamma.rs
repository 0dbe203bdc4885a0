use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ensure_finite, NumericError};

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 Lanczos coefficients (Godfrey).
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOLERANCE: f64 = 1e-12;

/// `sin(π z)` with the real part reduced exactly before scaling by π.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let f = Complex64::new(z.re - n, z.im);
    let s = (f * PI).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `cos(π z)` with the same reduction as [`sin_pi`].
pub fn cos_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let f = Complex64::new(z.re - n, z.im);
    let c = (f * PI).cos();
    if n.rem_euclid(2.0) == 0.0 {
        c
    } else {
        -c
    }
}

/// Complex Gamma function: Lanczos approximation for `Re z ≥ 1/2`,
/// reflection `Γ(z) Γ(1-z) = π / sin(πz)` below.
pub fn gamma_complex(z: Complex64) -> Result<Complex64, NumericError> {
    if z.im.abs() < POLE_TOLERANCE && z.re <= 0.5 {
        let nearest = z.re.round();
        if nearest <= 0.0 && (z.re - nearest).abs() < POLE_TOLERANCE {
            return Err(NumericError::PoleAtNonpositiveInteger(nearest));
        }
    }
    let value = if z.re < 0.5 {
        Complex64::new(PI, 0.0) / (sin_pi(z) * lanczos(Complex64::new(1.0, 0.0) - z))
    } else {
        lanczos(z)
    };
    ensure_finite(value, z)
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_part = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_part.exp() * series
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_values() {
        let g5 = gamma_complex(c(5.0, 0.0)).unwrap();
        assert!(rel(g5, c(24.0, 0.0)) < 1e-14);
        let mut fact = 1.0f64;
        for n in 1..30 {
            let g = gamma_complex(c(n as f64, 0.0)).unwrap();
            assert!(rel(g, c(fact, 0.0)) < 1e-13, "Γ({n})");
            fact *= n as f64;
        }
    }

    #[test]
    fn half_integer() {
        // Γ(1/2) = √π; Wallis-type product oracle for √π
        let mut prod = 1.0f64;
        for k in 1..2_000_000u64 {
            let k = k as f64;
            prod *= (2.0 * k) * (2.0 * k) / ((2.0 * k - 1.0) * (2.0 * k + 1.0));
        }
        let sqrt_pi_wallis = (2.0 * prod).sqrt();
        let g = gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((g.re - 1.772_453_850_905_516).abs() < 1e-14);
        assert!((g.re - sqrt_pi_wallis).abs() < 1e-6);
        assert!(g.im.abs() < 1e-16);
    }

    #[test]
    fn reference_values() {
        // mpmath.gamma at 30 digits
        let cases = [
            (c(0.5, 3.0), c(0.021_445_670_552_430_646, 0.006_865_364_837_261_678)),
            (c(-2.5, 0.0), c(-0.945_308_720_482_941_9, 0.0)),
            (c(-4.3, 1.7), c(0.001_042_002_767_734_159_8, 0.000_200_769_625_158_744_42)),
            (c(10.0, 10.0), c(1_423.851_941_789_183_1, -3_496.081_973_307_944_6)),
            (c(-20.5, 3.0), c(5.442_304_277_725_334_6e-23, -1.569_618_646_939_275_5e-23)),
            (c(30.0, -40.0), c(1.874_199_767_303_780_2e21, 1.510_844_503_332_867_9e21)),
        ];
        for (z, expected) in cases {
            let g = gamma_complex(z).unwrap();
            assert!(rel(g, expected) < 1e-12, "Γ({z}) = {g}, expected {expected}");
        }
    }

    #[test]
    fn poles() {
        assert_eq!(
            gamma_complex(c(-3.0, 0.0)),
            Err(NumericError::PoleAtNonpositiveInteger(-3.0))
        );
        assert!(gamma_complex(c(0.0, 0.0)).is_err());
        assert!(gamma_complex(c(-3.0, 1e-3)).is_ok());
    }

    #[test]
    fn reduced_trig() {
        for &x in &[0.25, -1.75, 3.5, 10.0, -7.0] {
            let s = sin_pi(c(x, 0.0));
            assert!((s.re - (PI * x).sin()).abs() < 1e-14);
            let co = cos_pi(c(x, 0.0));
            assert!((co.re - (PI * x).cos()).abs() < 1e-14);
        }
        assert_eq!(sin_pi(c(-4.0, 0.0)).re, 0.0);
    }

    proptest::proptest! {
        #[test]
        fn multiplicative_property(r in 0.0f64..49.0, t in 0.0f64..std::f64::consts::TAU) {
            let z = Complex64::from_polar(r, t);
            proptest::prop_assume!((z.re.round() - z.re).abs() > 1e-3 || z.im.abs() > 1e-3 || z.re > 0.5);
            let next = gamma_complex(z + 1.0).unwrap();
            let scaled = z * gamma_complex(z).unwrap();
            proptest::prop_assert!((next - scaled).norm() / next.norm() <= 1e-11, "z = {}", z);
        }
    }
}
