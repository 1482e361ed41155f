//! Extended-precision Maclaurin oracle for `Ai` and `Bi`.
//!
//! ```text
//! Ai(z) = c₁ f(z) − c₂ g(z),   Bi(z) = √3 (c₁ f(z) + c₂ g(z))
//! f = Σ Π_{j<k}(3j+1) z^{3k}/(3k)!,   g = Σ Π_{j<k}(3j+2) z^{3k+1}/(3k+1)!
//! c₁ = 3^{−2/3}/Γ(2/3),   c₂ = 3^{−1/3}/Γ(1/3)
//! ```
//!
//! The sums cancel to about `e^{−(4/3)Re z^{3/2}}` of their size, which is
//! checked against the working precision before summing.

use num_complex::Complex64;
use rug::ops::Pow;
use rug::Float;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle domain: |z| = {modulus} exceeds {limit}")]
    Domain { modulus: f64, limit: f64 },
    #[error("oracle configuration: {0}")]
    Config(String),
    #[error("oracle precision budget: {needed} bits needed, {available} available")]
    Precision { needed: u32, available: u32 },
}

/// Working precision and truncation of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Significand bits of the extended arithmetic, at least 128.
    pub precision_bits: u32,
    /// Number of Maclaurin terms (powers `z^0 … z^{terms−1}`), at least 100.
    pub terms: usize,
    /// Largest accepted `|z|`.
    pub max_modulus: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            precision_bits: 256,
            terms: 600,
            max_modulus: 12.0,
        }
    }
}

impl OracleConfig {
    pub fn new(precision_bits: u32, terms: usize) -> Self {
        OracleConfig {
            precision_bits,
            terms,
            ..Default::default()
        }
    }

    /// Default precision with the domain opened to the corners of the
    /// `[−10, 10]²` grid.
    pub fn grid() -> Self {
        OracleConfig {
            max_modulus: 15.0,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.precision_bits < 128 {
            return Err(OracleError::Config(format!("precision_bits {} < 128", self.precision_bits)));
        }
        if self.terms < 100 {
            return Err(OracleError::Config(format!("terms {} < 100", self.terms)));
        }
        Ok(())
    }
}

/// Complex number with MPFR parts.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(prec: u32, z: Complex64) -> Self {
        BigComplex {
            re: Float::with_val(prec, z.re),
            im: Float::with_val(prec, z.im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn mul(&self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex { re, im }
    }

    pub fn add(&self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn scale(&self, k: &Float) -> BigComplex {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    /// `e^{iθ}` with `θ = num·π/den`.
    pub fn unit_pi(prec: u32, num: i32, den: i32) -> BigComplex {
        let theta = Float::with_val(prec, rug::float::Constant::Pi) * num / den;
        let (s, c) = theta.sin_cos(Float::new(prec));
        BigComplex { re: c, im: s }
    }

    /// `|self − o| / |o|`.
    pub fn rel_diff(&self, o: &BigComplex) -> Float {
        self.sub(o).norm() / o.norm()
    }
}

fn chains(z: &BigComplex, terms: usize) -> (BigComplex, BigComplex) {
    let p = z.prec();
    let z2 = z.mul(z);
    let z3 = z2.mul(z);
    let mut f = BigComplex::new(p, Complex64::new(1.0, 0.0));
    let mut g = z.clone();
    let mut tf = f.clone();
    let mut tg = g.clone();
    let mut k = 0usize;
    while 3 * k + 3 < terms {
        let kk = 3 * k as u64;
        tf = tf.mul(&z3);
        let d = Float::with_val(p, (kk + 2) * (kk + 3));
        tf.re /= &d;
        tf.im /= &d;
        f = f.add(&tf);
        if 3 * k + 4 < terms {
            tg = tg.mul(&z3);
            let d = Float::with_val(p, (kk + 3) * (kk + 4));
            tg.re /= &d;
            tg.im /= &d;
            g = g.add(&tg);
        }
        k += 1;
    }
    (f, g)
}

fn origin_constants(p: u32) -> (Float, Float) {
    let three = Float::with_val(p, 3);
    let c1 = Float::with_val(p, (&three).pow(Float::with_val(p, -2) / 3u32))
        / Float::with_val(p, Float::with_val(p, 2) / 3u32).gamma();
    let c2 = Float::with_val(p, (&three).pow(Float::with_val(p, -1) / 3u32))
        / Float::with_val(p, Float::with_val(p, 1) / 3u32).gamma();
    (c1, c2)
}

fn check(z: &BigComplex, cfg: &OracleConfig) -> Result<(), OracleError> {
    cfg.validate()?;
    let r = z.norm().to_f64();
    if !(r <= cfg.max_modulus) {
        return Err(OracleError::Domain {
            modulus: r,
            limit: cfg.max_modulus,
        });
    }
    // bits lost to cancellation plus a 64-bit reserve
    let needed = ((4.0 / 3.0) * r.powf(1.5) / std::f64::consts::LN_2).ceil() as u32 + 64;
    if needed > cfg.precision_bits {
        return Err(OracleError::Precision {
            needed,
            available: cfg.precision_bits,
        });
    }
    Ok(())
}

fn evaluate(z: &BigComplex, cfg: &OracleConfig, bi: bool) -> Result<BigComplex, OracleError> {
    check(z, cfg)?;
    let p = cfg.precision_bits;
    let z = BigComplex {
        re: Float::with_val(p, &z.re),
        im: Float::with_val(p, &z.im),
    };
    let (f, g) = chains(&z, cfg.terms);
    let (c1, c2) = origin_constants(p);
    let (a, b) = (f.scale(&c1), g.scale(&c2));
    if bi {
        let s3 = Float::with_val(p, 3).sqrt();
        Ok(a.add(&b).scale(&s3))
    } else {
        Ok(a.sub(&b))
    }
}

/// `Ai(z)` at an extended-precision argument, full working precision.
pub fn oracle_ai_ext(z: &BigComplex, cfg: &OracleConfig) -> Result<BigComplex, OracleError> {
    evaluate(z, cfg, false)
}

/// `Bi(z)` at an extended-precision argument.
pub fn oracle_bi_ext(z: &BigComplex, cfg: &OracleConfig) -> Result<BigComplex, OracleError> {
    evaluate(z, cfg, true)
}

/// `Ai(z)` rounded to binary64.
pub fn oracle_ai(z: Complex64, cfg: &OracleConfig) -> Result<Complex64, OracleError> {
    oracle_ai_ext(&BigComplex::new(cfg.precision_bits, z), cfg).map(|v| v.to_complex64())
}

/// `Bi(z)` rounded to binary64.
pub fn oracle_bi(z: Complex64, cfg: &OracleConfig) -> Result<Complex64, OracleError> {
    oracle_bi_ext(&BigComplex::new(cfg.precision_bits, z), cfg).map(|v| v.to_complex64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn origin() {
        let cfg = OracleConfig::default();
        let v = oracle_ai_ext(&BigComplex::new(256, c(0.0, 0.0)), &cfg).unwrap();
        let want = Float::parse("0.35502805388781723926006318600418317639797917419917724058332651030081004245").unwrap();
        let want = Float::with_val(256, want);
        let err = Float::with_val(256, &v.re - &want).abs() / &want;
        assert!(err.to_f64() < 1e-70);
        assert_eq!(oracle_ai(c(0.0, 0.0), &cfg).unwrap(), c(0.355_028_053_887_817_2, 0.0));
    }

    #[test]
    fn reference_points() {
        let cfg = OracleConfig::default();
        let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm();
        assert!(rel(oracle_ai(c(1.0, 0.0), &cfg).unwrap(), c(0.135_292_416_312_881_42, 0.0)) < 1e-16);
        assert!(rel(oracle_ai(c(-10.0, 0.0), &cfg).unwrap(), c(0.040_241_238_486_443_19, 0.0)) < 1e-15);
        assert!(rel(oracle_ai(c(10.0, 0.0), &cfg).unwrap(), c(1.104_753_255_289_869e-10, 0.0)) < 1e-15);
        assert!(rel(oracle_bi(c(5.0, 0.0), &cfg).unwrap(), c(657.792_044_171_171_2, 0.0)) < 1e-15);
    }

    #[test]
    fn rotation_identity_in_extended_precision() {
        let cfg = OracleConfig::default();
        let p = cfg.precision_bits;
        let z = BigComplex::unit_pi(p, 5, 6).scale(&Float::with_val(p, 3));
        let w = BigComplex::unit_pi(p, 2, 3);
        let wb = BigComplex::unit_pi(p, -2, 3);
        let a = oracle_ai_ext(&z, &cfg).unwrap();
        let b = oracle_ai_ext(&w.mul(&z), &cfg).unwrap().mul(&w);
        let cc = oracle_ai_ext(&wb.mul(&z), &cfg).unwrap().mul(&wb);
        let res = a.add(&b).add(&cc).norm() / a.norm();
        assert!(res.to_f64() < 1e-30);
    }

    #[test]
    fn configuration_and_domain_errors() {
        assert!(matches!(
            oracle_ai(c(13.0, 0.0), &OracleConfig::default()),
            Err(OracleError::Domain { .. })
        ));
        assert!(matches!(oracle_ai(c(1.0, 0.0), &OracleConfig::new(64, 600)), Err(OracleError::Config(_))));
        assert!(matches!(oracle_ai(c(1.0, 0.0), &OracleConfig::new(256, 50)), Err(OracleError::Config(_))));
        let tight = OracleConfig {
            precision_bits: 128,
            terms: 600,
            max_modulus: 15.0,
        };
        assert!(matches!(oracle_ai(c(14.0, 0.0), &tight), Err(OracleError::Precision { .. })));
    }
}
