//! Coefficients of the middle-segment inversion `α(s) = −w^{1/2} + Σ g_n s^n`
//! and the even derivatives of the Gaussian-segment integrand.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::One;

use crate::gamma::lgamma;
use crate::logscaled::LogPolar;

/// `i^n` as a Gaussian integer.
fn i_pow(n: usize) -> (i8, i8) {
    match n % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

/// Real magnitude `r_n = Γ(3n/2−1) / (Γ(n/2)·n!·3^{n−1})` as an exact
/// rational; the gamma ratio is the finite product `Π_{t=0}^{n−2} (n/2 + t)`.
pub fn middle_magnitude_exact(n: usize) -> BigRational {
    assert!(n >= 1);
    let half = BigRational::new(BigInt::from(n), BigInt::from(2));
    let mut acc = BigRational::one();
    for t in 0..n.saturating_sub(1) {
        acc *= &half + BigRational::from_integer(BigInt::from(t));
    }
    let mut den = BigInt::from(3).pow(n as u32 - 1);
    for k in 2..=n {
        den *= k;
    }
    acc / BigRational::from_integer(den)
}

/// Exact `g_n` at `w = 1`: `i^n · r_n`.
pub fn middle_coeff_exact(n: usize) -> Complex<BigRational> {
    let r = middle_magnitude_exact(n);
    let (re, im) = i_pow(n);
    Complex::new(&r * BigInt::from(re), &r * BigInt::from(im))
}

/// Magnitudes `r_1 … r_{n_max}` in binary64 via the two-step recurrence
/// `r_{n+2} = r_n·(3n/2−1)(3n/2)(3n/2+1) / ((n/2)(n+1)(n+2)·9)`.
pub fn middle_magnitudes(n_max: usize) -> Vec<f64> {
    let mut r = vec![0.0; n_max + 1];
    if n_max >= 1 {
        r[1] = 1.0;
    }
    if n_max >= 2 {
        r[2] = 1.0 / 6.0;
    }
    for n in 1..n_max.saturating_sub(1) {
        let h = 1.5 * n as f64;
        let nf = n as f64;
        r[n + 2] = r[n] * (h - 1.0) * h * (h + 1.0) / (0.5 * nf * (nf + 1.0) * (nf + 2.0) * 9.0);
    }
    r
}

/// Principal `w^p` for a unit complex `w`.
pub(crate) fn unit_pow(w: Complex64, p: f64) -> Complex64 {
    Complex64::from_polar(1.0, p * w.arg())
}

/// Coefficient of `s^n` in the middle-segment series,
/// `g_n(w) = i^n r_n w^{−3n/4+1/2}` with principal fractional powers.
pub fn middle_coeff(n: usize, w: Complex64) -> crate::Result<Complex64> {
    if n == 0 {
        return Err(crate::AiryError::Domain("middle_coeff needs n >= 1".into()));
    }
    if !w.re.is_finite() || !w.im.is_finite() || (w.norm() - 1.0).abs() > 1e-12 {
        return Err(crate::AiryError::Domain(format!("middle_coeff needs |w| = 1, got {w}")));
    }
    let r = middle_magnitudes(n)[n];
    Ok(scaled_middle(n, r, w))
}

pub(crate) fn scaled_middle(n: usize, r: f64, w: Complex64) -> Complex64 {
    let (re, im) = i_pow(n);
    Complex64::new(f64::from(re), f64::from(im)) * r * unit_pow(w, -0.75 * n as f64 + 0.5)
}

/// `Φ^{(2n)}(0) = i^{2n+1} Γ(3n+½) / (Γ(n+½) 9^n)`, carried as a log
/// magnitude with phase `±π/2`.
pub fn phi_even_derivative(n: usize) -> LogPolar {
    let nf = n as f64;
    let log_mag = lgamma(3.0 * nf + 0.5) - lgamma(nf + 0.5) - 2.0 * nf * 3f64.ln();
    let phase = if n % 2 == 0 {
        std::f64::consts::FRAC_PI_2
    } else {
        -std::f64::consts::FRAC_PI_2
    };
    LogPolar::new(log_mag, phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn first_coefficients() {
        let one = Complex64::new(1.0, 0.0);
        let g1 = middle_coeff(1, one).unwrap();
        assert!((g1 - Complex64::new(0.0, 1.0)).norm() < 1e-16);
        let g2 = middle_coeff(2, one).unwrap();
        assert!((g2 - Complex64::new(-1.0 / 6.0, 0.0)).norm() < 1e-16);
        assert_eq!(middle_magnitude_exact(2), BigRational::new(1.into(), 6.into()));
        assert!(middle_coeff(0, one).is_err());
        assert!(middle_coeff(3, Complex64::new(2.0, 0.0)).is_err());
    }

    #[test]
    fn recurrence_matches_exact() {
        let r = middle_magnitudes(120);
        for n in 1..=120 {
            let e = middle_magnitude_exact(n).to_f64().unwrap();
            assert!(((r[n] - e) / e).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn rotated_phase_factorises() {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::FRAC_PI_3);
        for n in 1..12 {
            let a = middle_coeff(n, w).unwrap();
            let b = middle_coeff(n, Complex64::new(1.0, 0.0)).unwrap()
                * Complex64::from_polar(1.0, 2.0 * std::f64::consts::FRAC_PI_3 * (-0.75 * n as f64 + 0.5));
            assert!((a - b).norm() <= 1e-14 * b.norm());
        }
    }

    #[test]
    fn phi_derivatives() {
        let p0 = phi_even_derivative(0).to_complex_scaled(0.0);
        assert!((p0 - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let p1 = phi_even_derivative(1).to_complex_scaled(0.0);
        assert!((p1 - Complex64::new(0.0, -5.0 / 12.0)).norm() < 1e-15);
        let p60 = phi_even_derivative(60);
        assert!(p60.log_mag.is_finite());
        assert!(lgamma(180.5) > 709.8);
    }
}
