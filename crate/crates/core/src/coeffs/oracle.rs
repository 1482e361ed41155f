//! Independent exact expansions used as ground truth for the coefficient
//! formulas.
//!
//! * The middle-segment inversion at `w = 1` is found by undetermined
//!   coefficients from `s² = β³/3 − β²`, `β = α + 1`, over the Gaussian
//!   rationals.
//! * `χ(t)/6^{1/3}` and its reciprocal are expanded by composing binomial
//!   series: first `√(1+4u/3)`, then `(1+v)^{±1/3}` term by term in `v`.
//! * The outer roots follow from Cardano's form
//!   `ŝ·α_k = 2^{−1/3} ω^{k−1} χ(t) + 2^{1/3} ω^{1−k} t²/χ(t)`.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::exact::{rational_bits, ChiPower, ExactBudget};
use crate::error::{AiryError, Result};

type Gq = Complex<BigRational>;

/// Ground-truth expansions up to order `n_max` in the respective variable.
#[derive(Debug, Clone)]
pub struct OracleSeries {
    /// `inversion[n]` is the coefficient of `s^n` in `α(s) + 1` at `w = 1`
    /// (index 0 holds zero).
    pub inversion: Vec<Complex<BigRational>>,
    /// Coefficients of `χ(t)/6^{1/3}` in `u = t³`, orders `0..=n_max/3`.
    pub chi: Vec<BigRational>,
    /// Coefficients of `6^{1/3}/χ(t)` in `u = t³`.
    pub chi_recip: Vec<BigRational>,
}

/// One monomial `coeff · 3^{cbrt3_power/3} · ω^{omega_power} · ŝ^{shat_power}`
/// of an outer root at `w = 1`, with `ω = e^{2πi/3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterTerm {
    pub shat_power: i32,
    pub coeff: BigRational,
    pub cbrt3_power: i8,
    pub omega_power: u8,
}

impl OuterTerm {
    pub fn unit(&self) -> Complex64 {
        let c3 = 3f64.cbrt().powi(i32::from(self.cbrt3_power));
        Complex64::from_polar(c3, 2.0 * std::f64::consts::PI / 3.0 * f64::from(self.omega_power))
    }

    pub fn value_at(&self, s_hat: f64) -> Complex64 {
        self.unit() * self.coeff.to_f64().unwrap_or(f64::NAN) * s_hat.powi(self.shat_power)
    }
}

impl OracleSeries {
    /// Laurent terms of `α_branch(ŝ)` at `w = 1` for `branch` in 1..=3,
    /// ordered by increasing power of `ŝ`.
    pub fn outer_terms(&self, branch: u8) -> Vec<OuterTerm> {
        assert!((1..=3).contains(&branch));
        let k = branch - 1;
        let mut out = Vec::new();
        for (m, (c, d)) in self.chi.iter().zip(&self.chi_recip).enumerate() {
            let m = m as i32;
            out.push(OuterTerm {
                shat_power: 3 * m - 1,
                coeff: c.clone(),
                cbrt3_power: 1,
                omega_power: k % 3,
            });
            out.push(OuterTerm {
                shat_power: 3 * m + 1,
                coeff: d.clone(),
                cbrt3_power: -1,
                omega_power: (3 - k) % 3,
            });
        }
        out
    }
}

fn check(x: &BigRational, budget: ExactBudget) -> Result<()> {
    let bits = rational_bits(x);
    if bits > budget.max_bits {
        return Err(AiryError::Resource {
            bits,
            budget: budget.max_bits,
        });
    }
    Ok(())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Undetermined coefficients for `β² − β³/3 + s² = 0`, `β = Σ_{n≥1} g_n s^n`,
/// `g_1 = i`.
fn invert_middle(n_max: usize, budget: ExactBudget) -> Result<Vec<Gq>> {
    let zero = Gq::new(BigRational::zero(), BigRational::zero());
    let mut g = vec![zero.clone(); n_max + 1];
    if n_max == 0 {
        return Ok(g);
    }
    g[1] = Gq::new(BigRational::zero(), BigRational::one());
    // sq[k]: coefficient of s^k in β²; tracked incrementally
    let third = q(1, 3);
    // −1/(2 g_1) = i/2
    let inv = Gq::new(BigRational::zero(), q(1, 2));
    for n in 2..=n_max {
        // coefficient of s^{n+1}: 2 g_1 g_n + Σ_{k=2}^{n−1} g_k g_{n+1−k} − (β³)_{n+1}/3
        let mut rest = zero.clone();
        for k in 2..n {
            rest += &g[k] * &g[n + 1 - k];
        }
        // (β³)_{n+1} = Σ_{a+b+c=n+1} g_a g_b g_c with all indices < n
        let mut cube = zero.clone();
        for a in 1..n {
            for b in 1..n {
                if a + b >= n + 1 {
                    break;
                }
                let c = n + 1 - a - b;
                if c >= n {
                    continue;
                }
                cube += &g[a] * &g[b] * &g[c];
            }
        }
        let lhs = rest - cube * Gq::new(third.clone(), BigRational::zero());
        g[n] = lhs * &inv;
        check(&g[n].re, budget)?;
        check(&g[n].im, budget)?;
    }
    Ok(g)
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `(1+v(u))^α` through order `m_max` by composing binomial series.
fn compose_chi(m_max: usize, power: ChiPower, budget: ExactBudget) -> Result<Vec<BigRational>> {
    // √(1+y), y = 4u/3
    let half = q(1, 2);
    let mut v = vec![BigRational::zero(); m_max + 1];
    let mut binom = BigRational::one();
    let mut ypow = BigRational::one();
    for k in 1..=m_max {
        binom = binom * (&half - BigRational::from_integer((k as i64 - 1).into())) / BigRational::from_integer((k as i64).into());
        ypow *= q(4, 3);
        v[k] = &binom * &ypow * &half;
    }
    if m_max >= 1 {
        v[1] += q(1, 3);
    }
    let alpha = power.exponent();
    let mut out = vec![BigRational::zero(); m_max + 1];
    out[0] = BigRational::one();
    let mut vk = vec![BigRational::zero(); m_max + 1];
    vk[0] = BigRational::one();
    let mut c = BigRational::one();
    for k in 1..=m_max {
        vk = mul_trunc(&vk, &v, m_max);
        c = c * (&alpha - BigRational::from_integer((k as i64 - 1).into())) / BigRational::from_integer((k as i64).into());
        for n in k..=m_max {
            out[n] += &c * &vk[n];
        }
    }
    for x in &out {
        check(x, budget)?;
    }
    Ok(out)
}

/// Largest order accepted by [`oracle_invert`].
pub const ORACLE_MAX_ORDER: usize = 60;

/// Builds the brute-force expansions through order `n_max ≤ 60`.
pub fn oracle_invert(n_max: usize) -> Result<OracleSeries> {
    oracle_invert_with(n_max, ExactBudget::default())
}

pub fn oracle_invert_with(n_max: usize, budget: ExactBudget) -> Result<OracleSeries> {
    if n_max > ORACLE_MAX_ORDER {
        return Err(AiryError::Domain(format!(
            "oracle order {n_max} exceeds the supported maximum {ORACLE_MAX_ORDER}"
        )));
    }
    let m = n_max / 3;
    Ok(OracleSeries {
        inversion: invert_middle(n_max, budget)?,
        chi: compose_chi(m, ChiPower::Cbrt, budget)?,
        chi_recip: compose_chi(m, ChiPower::InvCbrt, budget)?,
    })
}
