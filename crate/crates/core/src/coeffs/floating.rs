//! Binary64 route to the `χ` coefficients for orders beyond the exact table.
//!
//! Substituting `u → −u` turns `v(u)` into `−V(u)` where
//! `V(u) = u/3 + (1 − √(1−4u/3))/2` has nonnegative coefficients. Then
//!
//! ```text
//! (1 − V)^{1/3}  = 1 − Σ_k |C(1/3,k)| V^k
//! (1 − V)^{−1/3} = 1 + Σ_k |C(−1/3,k)| V^k
//! ```
//!
//! so every coefficient is a sum of same-signed terms and the usual
//! alternating cancellation never happens. The original coefficients follow
//! from `c_m = (−1)^m ĉ_m`.

use super::exact::ChiPower;

fn v_coefficients(m_max: usize) -> Vec<f64> {
    // |C(1/2,k)|·(4/3)^k / 2, plus u/3
    let mut v = vec![0.0; m_max + 1];
    let mut binom = 1.0f64;
    let mut pow = 1.0f64;
    for k in 1..=m_max {
        binom *= (0.5 - (k as f64 - 1.0)) / k as f64;
        pow *= 4.0 / 3.0;
        v[k] = binom.abs() * pow / 2.0;
    }
    if m_max >= 1 {
        v[1] += 1.0 / 3.0;
    }
    v
}

/// Coefficients `c_0 … c_{m_max}` of `(1+v(u))^{±1/3}` in binary64.
pub fn taylor_floats(m_max: usize, power: ChiPower) -> Vec<f64> {
    let alpha = match power {
        ChiPower::Cbrt => 1.0 / 3.0,
        ChiPower::InvCbrt => -1.0 / 3.0,
    };
    let v = v_coefficients(m_max);
    let mut acc = vec![0.0; m_max + 1];
    acc[0] = 1.0;
    let mut vk = vec![0.0; m_max + 1];
    vk[0] = 1.0;
    let mut binom = 1.0f64;
    for k in 1..=m_max {
        // V^k = V^{k−1}·V, starting at u^k
        let mut next = vec![0.0; m_max + 1];
        for n in k..=m_max {
            let mut s = 0.0;
            for i in (k - 1)..n {
                s += vk[i] * v[n - i];
            }
            next[n] = s;
        }
        vk = next;
        binom *= (alpha - (k as f64 - 1.0)) / k as f64;
        let w = binom.abs();
        let sign = match power {
            ChiPower::Cbrt => -1.0,
            ChiPower::InvCbrt => 1.0,
        };
        for n in k..=m_max {
            acc[n] += sign * w * vk[n];
        }
    }
    for (m, c) in acc.iter_mut().enumerate() {
        if m % 2 == 1 {
            *c = -*c;
        }
    }
    acc
}
