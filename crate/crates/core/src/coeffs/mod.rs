//! Expansion coefficients for the convergent Airy series and the path
//! parameterisations.
//!
//! The outer-segment coefficients are Taylor coefficients of
//! `χ(t) = [3 + 2t³ + √3·√(3+4t³)]^{1/3}` and of `1/χ(t)`. Both are
//! rational multiples of a single algebraic unit (`6^{1/3}` and `6^{−1/3}`),
//! so the exact views store a [`ScaledRational`].

pub mod exact;
pub mod floating;
pub mod middle;
pub mod oracle;

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{AiryError, Result};
pub use exact::{falling_factorial, h_poly, ChiPower, ExactBudget};
pub use middle::{middle_coeff, phi_even_derivative};
pub use oracle::{oracle_invert, OracleSeries, OuterTerm};

/// Exact tables are kept up to this order.
pub const EXACT_LIMIT: usize = 200;

/// `coeff · 6^{unit/3}` with `unit ∈ {−1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRational {
    pub coeff: BigRational,
    pub unit: i8,
}

impl ScaledRational {
    pub fn new(coeff: BigRational, unit: i8) -> Self {
        assert!((-1..=1).contains(&unit));
        ScaledRational { coeff, unit }
    }

    /// Correctly rounded binary64 value (the cube root is carried to 128
    /// fractional bits before the single final rounding).
    pub fn to_f64(&self) -> f64 {
        const B: u32 = 128;
        let scaled = match self.unit {
            0 => self.coeff.clone(),
            u => {
                let radicand: BigInt = if u > 0 { 6.into() } else { 36.into() };
                let root = (radicand << (3 * B) as usize).cbrt();
                let mut den = BigInt::one() << B as usize;
                if u < 0 {
                    den *= 6;
                }
                &self.coeff * BigRational::new(root, den)
            }
        };
        scaled.to_f64().unwrap_or(f64::NAN)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ScaledRational::new(&self.coeff * k, self.unit)
    }
}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*6^(1/3)", self.coeff),
            _ => write!(f, "{}*6^(-1/3)", self.coeff),
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `χ^{(n)}(0)` as an exact multiple of `6^{1/3}`; zero unless `3 | n`.
pub fn chi_derivative(n: usize) -> Result<ScaledRational> {
    if n == 0 {
        return Err(AiryError::Domain("chi_derivative needs n >= 1".into()));
    }
    if n % 3 != 0 {
        return Ok(ScaledRational::new(BigRational::zero(), 1));
    }
    let m = n / 3;
    let c = exact::taylor_table(m, ChiPower::Cbrt, ExactBudget::default())?;
    Ok(ScaledRational::new(c[m].clone(), 1).scale(&factorial(n)))
}

/// Coefficients consumed by the convergent expansion.
///
/// For every order `m` the table holds
/// * `A_m = a_{3m}/(3m)!`, the Taylor coefficient of `χ` at `t^{3m}`, and
/// * `B_m = b_{3m}/(3m)!`, the same for `1/χ`,
///
/// plus the middle-segment magnitudes `r_n` from which `g_n(w)` is formed.
/// Exact views exist for `m ≤ min(m_max, EXACT_LIMIT)` when the table is
/// built with [`build_ab_table`]. The derivatives `a_{3m}` themselves
/// overflow binary64 beyond `m ≈ 56`, so float views hold the Taylor
/// coefficients.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    m_max: usize,
    a_exact: Vec<ScaledRational>,
    b_exact: Vec<ScaledRational>,
    a_float: Vec<f64>,
    b_float: Vec<f64>,
    g_mag: Vec<f64>,
}

impl CoefficientTable {
    /// Float-only table, built by the sign-coherent binary64 route.
    pub fn floating(m_max: usize) -> Self {
        let s6 = 6f64.cbrt();
        let a_float = floating::taylor_floats(m_max, ChiPower::Cbrt)
            .into_iter()
            .map(|c| c * s6)
            .collect();
        let b_float = floating::taylor_floats(m_max, ChiPower::InvCbrt)
            .into_iter()
            .map(|d| d / s6)
            .collect();
        CoefficientTable {
            m_max,
            a_exact: Vec::new(),
            b_exact: Vec::new(),
            a_float,
            b_float,
            g_mag: middle::middle_magnitudes(3 * m_max + 2),
        }
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// Number of orders with exact views.
    pub fn exact_len(&self) -> usize {
        self.a_exact.len()
    }

    /// `a_{3m}/(3m)!` in binary64.
    pub fn a(&self, m: usize) -> f64 {
        self.a_float[m]
    }

    /// `b_{3m}/(3m)!` in binary64.
    pub fn b(&self, m: usize) -> f64 {
        self.b_float[m]
    }

    /// Exact `a_{3m}/(3m)!`.
    pub fn a_taylor_exact(&self, m: usize) -> Option<&ScaledRational> {
        self.a_exact.get(m)
    }

    /// Exact `b_{3m}/(3m)!`.
    pub fn b_taylor_exact(&self, m: usize) -> Option<&ScaledRational> {
        self.b_exact.get(m)
    }

    /// Exact derivative `a_{3m} = χ^{(3m)}(0)` (`χ(0)` for `m = 0`).
    pub fn a_exact(&self, m: usize) -> Option<ScaledRational> {
        self.a_exact.get(m).map(|x| x.scale(&factorial(3 * m)))
    }

    /// Exact `b_{3m}`.
    pub fn b_exact(&self, m: usize) -> Option<ScaledRational> {
        self.b_exact.get(m).map(|x| x.scale(&factorial(3 * m)))
    }

    pub fn a_floats(&self) -> &[f64] {
        &self.a_float
    }

    pub fn b_floats(&self) -> &[f64] {
        &self.b_float
    }

    /// `g_n(w)` for `1 ≤ n ≤ 3·m_max + 2`.
    pub fn g(&self, n: usize, w: Complex64) -> Complex64 {
        middle::scaled_middle(n, self.g_mag[n], w)
    }
}

/// Builds exact and float views through order `m_max`. Exact views stop at
/// [`EXACT_LIMIT`]; beyond it only the binary64 route is used.
pub fn build_ab_table(m_max: usize) -> Result<CoefficientTable> {
    build_ab_table_with(m_max, ExactBudget::default())
}

pub fn build_ab_table_with(m_max: usize, budget: ExactBudget) -> Result<CoefficientTable> {
    let exact_to = m_max.min(EXACT_LIMIT);
    let c = exact::taylor_table(exact_to, ChiPower::Cbrt, budget)?;
    let d = exact::taylor_table(exact_to, ChiPower::InvCbrt, budget)?;
    let mut table = CoefficientTable::floating(m_max);
    table.a_exact = c.into_iter().map(|x| ScaledRational::new(x, 1)).collect();
    table.b_exact = d.into_iter().map(|x| ScaledRational::new(x, -1)).collect();
    for m in 0..=exact_to {
        table.a_float[m] = table.a_exact[m].to_f64();
        table.b_float[m] = table.b_exact[m].to_f64();
    }
    Ok(table)
}

static SHARED: RwLock<Option<Arc<CoefficientTable>>> = RwLock::new(None);

/// Process-wide float table covering at least `m_max` orders. Grows by
/// doubling when a longer table is requested; existing handles stay valid.
pub fn shared_table(m_max: usize) -> Arc<CoefficientTable> {
    if let Some(t) = SHARED.read().expect("coefficient cache poisoned").as_ref() {
        if t.m_max() >= m_max {
            return Arc::clone(t);
        }
    }
    let mut guard = SHARED.write().expect("coefficient cache poisoned");
    if let Some(t) = guard.as_ref() {
        if t.m_max() >= m_max {
            return Arc::clone(t);
        }
    }
    let current = guard.as_ref().map_or(0, |t| t.m_max());
    let size = m_max.max(2 * current).max(512);
    let t = Arc::new(CoefficientTable::floating(size));
    *guard = Some(Arc::clone(&t));
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn chi_derivative_examples() {
        assert!(chi_derivative(1).unwrap().coeff.is_zero());
        assert!(chi_derivative(2).unwrap().coeff.is_zero());
        let d3 = chi_derivative(3).unwrap();
        assert_eq!(d3, ScaledRational::new(q(4, 3), 1));
        assert!((d3.to_f64() - 4.0 / 3.0 * 6f64.cbrt()).abs() < 1e-15);
        assert!((d3.to_f64() - 2.422_827_457_1).abs() < 1e-10);
        assert!(chi_derivative(0).is_err());
    }

    #[test]
    fn table_heads() {
        let t = build_ab_table(0).unwrap();
        assert!((t.a(0) - 1.817_120_592_8).abs() < 1e-10);
        assert!((t.b(0) - 0.550_321_208_1).abs() < 1e-10);
        assert_eq!(t.a_exact(0).unwrap(), ScaledRational::new(q(1, 1), 1));
        let t = build_ab_table(3).unwrap();
        assert_eq!(t.a_taylor_exact(1).unwrap().coeff, q(2, 9));
        assert_eq!(t.a_exact(1).unwrap().coeff, q(4, 3));
    }

    #[test]
    fn float_views_are_rounded_exact_values() {
        let t = build_ab_table(40).unwrap();
        for m in 0..=40 {
            let x = t.a_taylor_exact(m).unwrap();
            // compare against a 300-bit rendering
            let hi = &x.coeff * BigRational::new((BigInt::from(6) << 900usize).cbrt(), BigInt::one() << 300usize);
            let want = hi.to_f64().unwrap();
            assert_eq!(t.a(m), want, "m={m}");
        }
    }

    #[test]
    fn floating_table_matches_exact_to_1e13() {
        let t = build_ab_table(60).unwrap();
        let f = CoefficientTable::floating(60);
        for m in 0..=60 {
            assert!(((f.a(m) - t.a(m)) / t.a(m)).abs() < 1e-13);
            assert!(((f.b(m) - t.b(m)) / t.b(m)).abs() < 1e-13);
        }
    }

    #[test]
    fn shared_table_grows() {
        let a = shared_table(10);
        assert!(a.m_max() >= 10);
        let b = shared_table(a.m_max() + 1);
        assert!(b.m_max() > a.m_max());
        assert_eq!(a.a(5), b.a(5));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ScaledRational::new(q(-7, 81), 1).to_string(), "-7/81*6^(1/3)");
        assert_eq!(ScaledRational::new(q(2, 9), -1).to_string(), "2/9*6^(-1/3)");
    }
}
