//! Exact Taylor coefficients of `χ(t)` and `1/χ(t)` in powers of `u = t³`.
//!
//! With `χ(t) = 6^{1/3}·(1+v(u))^{1/3}` and
//! `v(u) = u/3 + (√(1+4u/3) − 1)/2`, the derivative triple sum reduces to
//!
//! ```text
//! c_m = δ_{m0} + Σ_{k=1}^{m} Σ_{i=0}^{k} Σ_{l=0}^{k−i}
//!        (−1)^{k−i−l} 2^{i−k} (α)_k h_{m−i}(l/2) / (3^i i! (m−i)! l! (k−i−l)!)
//! ```
//!
//! with `(x)_p` the falling factorial and `h_p(x) = (4/3)^p (x)_p`;
//! `α = 1/3` gives the `χ` coefficients and `α = −1/3` those of `1/χ`.
//! [`taylor_direct`] evaluates the sum as written. [`taylor_table`] regroups
//! it over integers: the inner sum over `l` is a forward difference of the
//! polynomial `l ↦ 2^p (l/2)_p`, and every power of 2 and 3 is collected so
//! that only one division per coefficient remains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AiryError, Result};

/// Which power of `χ` is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiPower {
    /// `χ^{1/3}`-type series, feeding the `a` coefficients.
    Cbrt,
    /// `χ^{−1/3}`-type series, feeding the `b` coefficients.
    InvCbrt,
}

impl ChiPower {
    pub fn exponent(self) -> BigRational {
        match self {
            ChiPower::Cbrt => BigRational::new(1.into(), 3.into()),
            ChiPower::InvCbrt => BigRational::new((-1).into(), 3.into()),
        }
    }

    /// Numerator of `3·α`.
    fn three_alpha(self) -> i64 {
        match self {
            ChiPower::Cbrt => 1,
            ChiPower::InvCbrt => -1,
        }
    }
}

/// Falling factorial `(x)_p = x(x−1)⋯(x−p+1)`; `(x)_0 = 1`.
pub fn falling_factorial(x: &BigRational, p: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut f = x.clone();
    for _ in 0..p {
        acc *= &f;
        f -= BigRational::one();
    }
    acc
}

/// `h_p(x) = (4/3)^p (x)_p`.
pub fn h_poly(x: &BigRational, p: usize) -> BigRational {
    let four_thirds = BigRational::new(4.into(), 3.into());
    num_traits::pow(four_thirds, p) * falling_factorial(x, p)
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(BigInt::one());
    for i in 1..=n {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

/// The triple sum as written, in rational arithmetic. Cost grows like `m⁴`;
/// meant for cross-checking [`taylor_table`] at small orders.
pub fn taylor_direct(m: usize, power: ChiPower) -> BigRational {
    let alpha = power.exponent();
    let fact = factorials(3 * m.max(1));
    let mut s = if m == 0 {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    let two = BigRational::from_integer(2.into());
    for k in 1..=m {
        let ak = falling_factorial(&alpha, k);
        for i in 0..=k {
            for l in 0..=(k - i) {
                let sign = if (k - i - l) % 2 == 0 { 1 } else { -1 };
                let den = BigInt::from(3).pow(i as u32)
                    * &fact[i]
                    * &fact[m - i]
                    * &fact[l]
                    * &fact[k - i - l];
                let h = h_poly(&BigRational::new(l.into(), 2.into()), m - i);
                let pow2 = if i >= k {
                    num_traits::pow(two.clone(), i - k)
                } else {
                    num_traits::pow(two.clone(), k - i).recip()
                };
                s += BigRational::new(sign.into(), den) * pow2 * &ak * h;
            }
        }
    }
    s
}

/// Bit budget for the exact integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactBudget {
    pub max_bits: u64,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget { max_bits: 1 << 16 }
    }
}

fn check_bits(x: &BigInt, budget: ExactBudget) -> Result<()> {
    let bits = x.bits();
    if bits > budget.max_bits {
        Err(AiryError::Resource {
            bits,
            budget: budget.max_bits,
        })
    } else {
        Ok(())
    }
}

/// `E[p][j] = Δ^j P(·,p)(0) / j!` for `j ≤ p ≤ m_max`, where
/// `P(l,p) = Π_{q<p} (l − 2q) = 2^p (l/2)_p`. Differences of order above
/// the polynomial degree vanish, so only `j ≤ p` is stored.
fn scaled_differences(m_max: usize, fact: &[BigInt], budget: ExactBudget) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(m_max + 1);
    for p in 0..=m_max {
        let mut seq: Vec<BigInt> = (0..=p)
            .map(|l| {
                let mut acc = BigInt::one();
                for q in 0..p {
                    acc *= BigInt::from(l as i64 - 2 * q as i64);
                }
                acc
            })
            .collect();
        let mut row = Vec::with_capacity(p + 1);
        for j in 0..=p {
            let (e, rem) = seq[0].div_rem(&fact[j]);
            debug_assert!(rem.is_zero());
            check_bits(&e, budget)?;
            row.push(e);
            for l in 0..seq.len() - 1 {
                seq[l] = &seq[l + 1] - &seq[l];
            }
            seq.pop();
        }
        out.push(row);
    }
    Ok(out)
}

/// Exact Taylor coefficients `c_0 … c_{m_max}` of `(1+v(u))^{±1/3}`.
pub fn taylor_table(m_max: usize, power: ChiPower, budget: ExactBudget) -> Result<Vec<BigRational>> {
    let fact = factorials(m_max);
    let e = scaled_differences(m_max, &fact, budget)?;
    let ta = power.three_alpha();
    // R_k = Π_{t<k} (3α − 3t) so that (α)_k = R_k / 3^k.
    let mut r = vec![BigInt::one()];
    for t in 0..m_max {
        let next = &r[t] * BigInt::from(ta - 3 * t as i64);
        r.push(next);
    }
    let six: Vec<BigInt> = {
        let mut v = vec![BigInt::one()];
        for k in 0..m_max {
            let next = &v[k] * 6;
            v.push(next);
        }
        v
    };
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(BigRational::one());
    for m in 1..=m_max {
        let mut total = BigInt::zero();
        for i in 0..=m {
            let p = m - i;
            let mut inner = BigInt::zero();
            for j in 0..=p {
                if i + j == 0 || e[p][j].is_zero() {
                    continue;
                }
                inner += &r[i + j] * &six[p - j] * &e[p][j];
            }
            if inner.is_zero() {
                continue;
            }
            let binom = &fact[m] / (&fact[i] * &fact[p]);
            total += binom * inner;
        }
        check_bits(&total, budget)?;
        let den = BigInt::from(9).pow(m as u32) * &fact[m];
        out.push(BigRational::new(total, den));
    }
    Ok(out)
}

/// `|x|` bit length of numerator and denominator together.
pub fn rational_bits(x: &BigRational) -> u64 {
    x.numer().abs().bits() + x.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn falling_is_not_rising() {
        assert_eq!(falling_factorial(&q(5, 1), 3), q(60, 1));
        assert_eq!(falling_factorial(&q(1, 2), 2), q(-1, 4));
        assert_eq!(falling_factorial(&q(7, 3), 0), q(1, 1));
        assert_eq!(h_poly(&q(1, 2), 1), q(2, 3));
    }

    #[test]
    fn known_low_orders() {
        let c = taylor_table(7, ChiPower::Cbrt, ExactBudget::default()).unwrap();
        let d = taylor_table(7, ChiPower::InvCbrt, ExactBudget::default()).unwrap();
        let cw = [
            q(1, 1),
            q(2, 9),
            q(-7, 81),
            q(130, 2187),
            q(-988, 19683),
            q(8360, 177147),
            q(-226765, 4782969),
            q(2144890, 43046721),
        ];
        let dw = [
            q(1, 1),
            q(-2, 9),
            q(11, 81),
            q(-238, 2187),
            q(1955, 19683),
            q(-17342, 177147),
            q(485576, 4782969),
            q(-4698928, 43046721),
        ];
        assert_eq!(c, cw);
        assert_eq!(d, dw);
    }

    #[test]
    fn regrouped_sum_equals_literal_sum() {
        let c = taylor_table(9, ChiPower::Cbrt, ExactBudget::default()).unwrap();
        let d = taylor_table(9, ChiPower::InvCbrt, ExactBudget::default()).unwrap();
        for m in 0..=9 {
            assert_eq!(c[m], taylor_direct(m, ChiPower::Cbrt), "c_{m}");
            assert_eq!(d[m], taylor_direct(m, ChiPower::InvCbrt), "d_{m}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = taylor_table(40, ChiPower::Cbrt, ExactBudget { max_bits: 64 }).unwrap_err();
        assert!(matches!(err, AiryError::Resource { .. }));
    }
}
