//! Classical asymptotic expansions with optimal truncation.
//!
//! With `c_n = Γ(3n+½) / (9^n (2n)!)`,
//!
//! ```text
//! F(z) = e^{−ζ} / (2π z^{1/4}) · Σ (−1)^n c_n z^{−3n/2}
//! G(z) = e^{+ζ} / (2π z^{1/4}) · Σ c_n z^{−3n/2},      ζ = (2/3) z^{3/2}
//! ```
//!
//! and on the negative axis the paired sums
//! `P(x) = x^{−1/4}/π · Σ (−1)^k c_{2k} x^{−3k}`,
//! `Q(x) = x^{−1/4}/π · Σ (−1)^k c_{2k+1} x^{−3(2k+1)/2}`.
//! Each series is cut just before its smallest term.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{in_sector, PhaseDecomposition, SeriesEvaluation, SeriesMethod};
use crate::error::{AiryError, Result};

/// The four asymptotic sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticSeries {
    F,
    G,
    P,
    Q,
}

/// Scan limit for the smallest-term search.
const MAX_SCAN: usize = 100_000;

/// `ln c_n` for `n = 0..n_len`, by the ratio
/// `c_{n+1}/c_n = (3n+½)(3n+3/2)(3n+5/2) / (9(2n+1)(2n+2))`.
pub(crate) fn f_coefficient_logs(n_len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_len);
    let mut l = 0.5 * PI.ln();
    for n in 0..n_len {
        out.push(l);
        l += f_ratio(n).ln();
    }
    out
}

#[inline]
fn f_ratio(n: usize) -> f64 {
    let t = 3.0 * n as f64;
    let m = 2.0 * n as f64;
    (t + 0.5) * (t + 1.5) * (t + 2.5) / (9.0 * (m + 1.0) * (m + 2.0))
}

/// Log modulus of the `n`-th term of the named series at `|z| = r`,
/// prefactor excluded.
pub fn asymptotic_term_log(r: f64, series: AsymptoticSeries, n: usize) -> f64 {
    let (idx, pow) = match series {
        AsymptoticSeries::F | AsymptoticSeries::G => (n, 1.5 * n as f64),
        AsymptoticSeries::P => (2 * n, 3.0 * n as f64),
        AsymptoticSeries::Q => (2 * n + 1, 1.5 * (2 * n + 1) as f64),
    };
    f_coefficient_logs(idx + 1)[idx] - pow * r.ln()
}

/// Index of the smallest term: the first `n` whose successor is not smaller.
pub fn optimal_truncation_index(z: Complex64, series: AsymptoticSeries) -> Result<usize> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(AiryError::Degenerate("asymptotic series at z = 0"));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(AiryError::NonFinite);
    }
    Ok(smallest_term_index(z.norm(), series))
}

fn smallest_term_index(r: f64, series: AsymptoticSeries) -> usize {
    let lr = r.ln();
    // log of the ratio between consecutive terms
    let step = |n: usize| -> f64 {
        match series {
            AsymptoticSeries::F | AsymptoticSeries::G => f_ratio(n).ln() - 1.5 * lr,
            AsymptoticSeries::P => (f_ratio(2 * n) * f_ratio(2 * n + 1)).ln() - 3.0 * lr,
            AsymptoticSeries::Q => (f_ratio(2 * n + 1) * f_ratio(2 * n + 2)).ln() - 3.0 * lr,
        }
    };
    (0..MAX_SCAN).find(|&n| step(n) >= 0.0).unwrap_or(MAX_SCAN)
}

/// Truncated sum, bound (first neglected term) and last included term, all
/// without prefactor. `alternate` applies `(−1)^n`.
struct Truncated {
    sum: Complex64,
    terms: usize,
    bound: f64,
    last: f64,
}

fn truncated_sum(d: &PhaseDecomposition, series: AsymptoticSeries) -> Truncated {
    let n_star = smallest_term_index(d.r, series).max(1);
    let lr = d.r.ln();
    let logs = f_coefficient_logs(2 * n_star + 2);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    let term_at = |n: usize| -> (f64, f64) {
        // (log modulus, phase)
        match series {
            AsymptoticSeries::F => (logs[n] - 1.5 * n as f64 * lr, n as f64 * PI - 1.5 * n as f64 * d.phi),
            AsymptoticSeries::G => (logs[n] - 1.5 * n as f64 * lr, -1.5 * n as f64 * d.phi),
            AsymptoticSeries::P => (logs[2 * n] - 3.0 * n as f64 * lr, n as f64 * PI),
            AsymptoticSeries::Q => {
                let k = 2 * n + 1;
                (logs[k] - 1.5 * k as f64 * lr, n as f64 * PI)
            }
        }
    };
    for n in 0..n_star {
        let (l, ph) = term_at(n);
        let t = Complex64::from_polar(l.exp(), ph);
        sum += t;
        last = t.norm();
    }
    let bound = term_at(n_star).0.exp();
    Truncated {
        sum,
        terms: n_star,
        bound,
        last,
    }
}

/// `ln` of the `F`/`G` prefactor `e^{∓ζ}/(2π z^{1/4})`.
fn log_prefactor(d: &PhaseDecomposition, sign: f64) -> Complex64 {
    d.zeta() * sign - (2.0 * PI).ln() - d.ln() * 0.25
}

struct Part {
    value: Complex64,
    bound: f64,
    last: f64,
    terms: usize,
}

fn part(d: &PhaseDecomposition, series: AsymptoticSeries) -> Part {
    let t = truncated_sum(d, series);
    let sign = if series == AsymptoticSeries::G { 1.0 } else { -1.0 };
    let pref = log_prefactor(d, sign).exp();
    Part {
        value: pref * t.sum,
        bound: pref.norm() * t.bound,
        last: pref.norm() * t.last,
        terms: t.terms,
    }
}

fn check_z(z: Complex64) -> Result<PhaseDecomposition> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(AiryError::NonFinite);
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(AiryError::Degenerate("asymptotic expansion at z = 0"));
    }
    Ok(PhaseDecomposition::new(z))
}

fn on_negative_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

fn combine(parts: &[(Complex64, &Part)], notes: Vec<String>) -> SeriesEvaluation {
    let value = parts.iter().map(|(k, p)| k * p.value).sum();
    let bound = parts.iter().map(|(k, p)| k.norm() * p.bound).sum();
    let last = parts
        .iter()
        .map(|(k, p)| k.norm() * p.last)
        .fold(0.0, f64::max);
    let terms = parts.iter().map(|(_, p)| p.terms).max().unwrap_or(1);
    SeriesEvaluation {
        value,
        terms_used: terms,
        last_term_mag: last,
        error_bound: Some(bound),
        method: SeriesMethod::Asymptotic,
        notes,
    }
}

/// `Ai(z)` from the asymptotic sums.
///
/// For `|arg z| ≤ 2π/3` only `F` contributes. Past the Stokes rays the
/// recessive `G` is switched on with multiplier `i·sgn(arg z)`. On the
/// negative real axis the trigonometric `P`/`Q` form is used.
pub fn asymptotic_ai(z: Complex64) -> Result<SeriesEvaluation> {
    let d = check_z(z)?;
    if on_negative_axis(z) {
        let mut e = asymptotic_ai_neg_axis(-z.re)?;
        e.notes.push("negative real axis: trigonometric P/Q form".into());
        return Ok(e);
    }
    let f = part(&d, AsymptoticSeries::F);
    let one = Complex64::new(1.0, 0.0);
    if in_sector(d.phi) {
        return Ok(combine(&[(one, &f)], Vec::new()));
    }
    let g = part(&d, AsymptoticSeries::G);
    let k = Complex64::new(0.0, d.phi.signum());
    Ok(combine(
        &[(one, &f), (k, &g)],
        vec!["|arg z| > 2π/3: recessive G term included".into()],
    ))
}

/// Shared body of the negative-axis forms; `bi` selects the `Bi` pairing.
fn neg_axis(x: f64, bi: bool) -> Result<SeriesEvaluation> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(AiryError::Domain(format!("negative-axis form needs finite x > 0, got {x}")));
    }
    let d = PhaseDecomposition::new(Complex64::new(x, 0.0));
    let p = truncated_sum(&d, AsymptoticSeries::P);
    let q = truncated_sum(&d, AsymptoticSeries::Q);
    let pref = x.powf(-0.25) / PI;
    let xi = 2.0 / 3.0 * x.powf(1.5);
    let (s, c) = (xi + FRAC_PI_4).sin_cos();
    let (pv, qv) = (pref * p.sum.re, pref * q.sum.re);
    let value = if bi { pv * c + qv * s } else { pv * s - qv * c };
    Ok(SeriesEvaluation {
        value: Complex64::new(value, 0.0),
        terms_used: p.terms.max(q.terms),
        last_term_mag: pref * p.last.max(q.last),
        error_bound: Some(pref * (p.bound + q.bound)),
        method: SeriesMethod::Asymptotic,
        notes: Vec::new(),
    })
}

/// `Ai(−x) = P sin(ξ+π/4) − Q cos(ξ+π/4)`, `ξ = (2/3)x^{3/2}`.
pub fn asymptotic_ai_neg_axis(x: f64) -> Result<SeriesEvaluation> {
    neg_axis(x, false)
}

/// `Bi(z)` from the asymptotic sums: `2G + i·sgn(arg z)·F` up to the Stokes
/// rays, `G + i·sgn(arg z)·F` beyond them, and
/// `Bi(−x) = P cos(ξ+π/4) + Q sin(ξ+π/4)` on the negative axis.
pub fn asymptotic_bi(z: Complex64) -> Result<SeriesEvaluation> {
    let d = check_z(z)?;
    if on_negative_axis(z) {
        let mut e = neg_axis(-z.re, true)?;
        e.notes.push("negative real axis: trigonometric P/Q form".into());
        return Ok(e);
    }
    let g = part(&d, AsymptoticSeries::G);
    let sgn = if d.phi == 0.0 { 0.0 } else { d.phi.signum() };
    let gk = if in_sector(d.phi) { 2.0 } else { 1.0 };
    if sgn == 0.0 {
        return Ok(combine(&[(Complex64::new(gk, 0.0), &g)], Vec::new()));
    }
    let f = part(&d, AsymptoticSeries::F);
    Ok(combine(
        &[(Complex64::new(gk, 0.0), &g), (Complex64::new(0.0, sgn), &f)],
        Vec::new(),
    ))
}
