//! Convergent expansion of `Ai(z)` for `|arg z| ≤ 2π/3`.
//!
//! ```text
//! Ai(z) = e^{−ζ}/(2π z^{1/4}) Σ (−1)^n c_n P(n+½, X) z^{−3n/2}
//!       − √3 e^{−ζ}/(2^{2/3} π) Σ [ 2^{−2/3} A_n (n−1/3) Γ(1/3−n, X) z^{3n/2}
//!                                  − B_n (n+1/3) Γ(−1/3−n, X) z^{3n/2+1} ]
//! ```
//!
//! with `ζ = (2/3)z^{3/2}`, `X = (4/3)|z|^{3/2}`, `c_n` the coefficients of
//! the asymptotic `F` series and `A_n`, `B_n` the Taylor coefficients of
//! `χ` and `1/χ`. The first sum is `F` with each term damped by a
//! regularised lower incomplete gamma; the other two come from the outer
//! path segments, which is why they decay only algebraically.
//!
//! Every term is formed as a log modulus plus phase; the sums are taken
//! after subtracting the largest log modulus of each group.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::asymptotic::f_coefficient_logs;
use super::bound;
use super::{in_sector, PhaseDecomposition, SeriesEvaluation, SeriesMethod, GAMMA_ONE_THIRD};
use crate::coeffs::shared_table;
use crate::error::{domain, AiryError, Result};
use crate::gamma::{ln_regularized_lower_p, upper_incomplete};
use crate::logscaled::LogPolar;

/// Terms of the three sums, prefactors held apart in log form.
#[derive(Debug, Clone)]
pub struct ConvergentTerms {
    pub s1: Vec<LogPolar>,
    pub s2: Vec<LogPolar>,
    pub s3: Vec<LogPolar>,
    /// `ln( e^{−ζ}/(2π z^{1/4}) )`.
    pub log_pref1: Complex64,
    /// `ln( −√3 e^{−ζ}/(2^{2/3}π) )`.
    pub log_pref2: Complex64,
}

impl ConvergentTerms {
    /// The three series with their log prefactors.
    pub fn groups(&self) -> [(&[LogPolar], Complex64); 3] {
        [
            (&self.s1, self.log_pref1),
            (&self.s2, self.log_pref2),
            (&self.s3, self.log_pref2),
        ]
    }

    /// Value of term `n` of series `k` (0, 1, 2) including its prefactor.
    pub fn term_value(&self, k: usize, n: usize) -> Complex64 {
        let (terms, pref) = self.groups()[k];
        let t = terms[n];
        if t.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        (pref + Complex64::new(t.log_mag, t.phase)).exp()
    }

    pub fn len(&self) -> usize {
        self.s1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s1.is_empty()
    }
}

fn phase_of_sign(negative: bool) -> f64 {
    if negative {
        PI
    } else {
        0.0
    }
}

/// Longest expansion supported: the outer-segment coefficients grow like
/// `(4/3)^m` and leave binary64 near `m = 2467`.
pub const MAX_TERMS: usize = 2400;

/// Builds the first `n_terms` terms of each sum. Requires `z ≠ 0`.
pub fn convergent_terms(z: Complex64, n_terms: usize) -> Result<ConvergentTerms> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(AiryError::NonFinite);
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(AiryError::Degenerate("convergent terms at z = 0"));
    }
    let d = PhaseDecomposition::new(z);
    let lr = d.r.ln();
    let x = 4.0 / 3.0 * d.r.powf(1.5);
    if n_terms > MAX_TERMS {
        return domain(format!("{n_terms} terms exceed the binary64 coefficient range ({MAX_TERMS})"));
    }
    let table = shared_table(n_terms);
    let c_logs = f_coefficient_logs(n_terms);
    let two_thirds_ln2 = 2.0 / 3.0 * 2f64.ln();

    let mut s1 = Vec::with_capacity(n_terms);
    let mut s2 = Vec::with_capacity(n_terms);
    let mut s3 = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        let nf = n as f64;
        let p = ln_regularized_lower_p(nf + 0.5, x)?;
        s1.push(LogPolar::new(c_logs[n] + p - 1.5 * nf * lr, nf * PI - 1.5 * nf * d.phi));

        let a = table.a(n);
        let g = upper_incomplete(1.0 / 3.0 - nf, x)?;
        let (gh, gl) = g.log_parts();
        let k = nf - 1.0 / 3.0;
        s2.push(LogPolar::new(
            a.abs().ln() - two_thirds_ln2 + k.abs().ln() + gh + gl + 1.5 * nf * lr,
            phase_of_sign((a < 0.0) != (k < 0.0)) + 1.5 * nf * d.phi,
        ));

        let b = table.b(n);
        let g = upper_incomplete(-1.0 / 3.0 - nf, x)?;
        let (gh, gl) = g.log_parts();
        s3.push(LogPolar::new(
            b.abs().ln() + (nf + 1.0 / 3.0).ln() + gh + gl + (1.5 * nf + 1.0) * lr,
            phase_of_sign(b > 0.0) + (1.5 * nf + 1.0) * d.phi,
        ));
    }
    let zeta = d.zeta();
    let log_pref1 = -zeta - (2.0 * PI).ln() - d.ln() * 0.25;
    let log_pref2 = -zeta + Complex64::new((3f64.sqrt() / PI).ln() - two_thirds_ln2, PI);
    Ok(ConvergentTerms {
        s1,
        s2,
        s3,
        log_pref1,
        log_pref2,
    })
}

/// Sum of `terms[..upto]` as `exp(log_pref + shift) · scaled_sum`, returned
/// as `(scaled partial sums, shift)`.
pub(crate) fn scaled_partial_sums(terms: &[LogPolar]) -> (Vec<Complex64>, f64) {
    let shift = terms
        .iter()
        .map(|t| t.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    let shift = if shift.is_finite() { shift } else { 0.0 };
    let mut acc = Complex64::new(0.0, 0.0);
    let sums = terms
        .iter()
        .map(|t| {
            acc += t.to_complex_scaled(shift);
            acc
        })
        .collect();
    (sums, shift)
}

fn ai_at_origin() -> Complex64 {
    // m = 0 term of the second sum: −√3/(2^{2/3}π) · 2^{−2/3} · 6^{1/3} · (−1/3) · Γ(1/3)
    let v = 3f64.sqrt() * 6f64.cbrt() * GAMMA_ONE_THIRD / (3.0 * 2f64.powf(4.0 / 3.0) * PI);
    Complex64::new(v, 0.0)
}

/// Partial sums `S_0, …, S_{N−1}` of the full expansion, where `S_n` holds
/// every term of index `≤ n` from all three sums.
pub fn convergent_partial_sums(z: Complex64, n_terms: usize) -> Result<Vec<Complex64>> {
    let terms = convergent_terms(z, n_terms)?;
    let mut out = Vec::with_capacity(n_terms);
    let mut pieces = Vec::new();
    for (ts, pref) in terms.groups() {
        let (sums, shift) = scaled_partial_sums(ts);
        let scale = (pref + shift).exp();
        pieces.push((sums, scale));
    }
    for n in 0..n_terms {
        out.push(pieces.iter().map(|(s, k)| s[n] * k).sum());
    }
    Ok(out)
}

/// Evaluates the convergent expansion through index `N−1`.
pub fn convergent_ai_sector(z: Complex64, n_terms: usize) -> Result<SeriesEvaluation> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(AiryError::NonFinite);
    }
    if n_terms < 1 {
        return Err(AiryError::Domain("convergent expansion needs N >= 1".into()));
    }
    let d = PhaseDecomposition::new(z);
    if !in_sector(d.phi) {
        return Err(AiryError::Sector { phi: d.phi });
    }
    if z == Complex64::new(0.0, 0.0) {
        let v = ai_at_origin();
        return Ok(SeriesEvaluation {
            value: v,
            terms_used: 1,
            last_term_mag: v.norm(),
            error_bound: Some(0.0),
            method: SeriesMethod::Convergent,
            notes: vec!["z = 0: exact value from the first term of the second sum".into()],
        });
    }
    let terms = convergent_terms(z, n_terms)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut last: f64 = 0.0;
    for (k, (ts, pref)) in terms.groups().into_iter().enumerate() {
        let (sums, shift) = scaled_partial_sums(ts);
        value += sums[n_terms - 1] * (pref + shift).exp();
        last = last.max(terms.term_value(k, n_terms - 1).norm());
    }
    let mut notes = Vec::new();
    let error_bound = if n_terms >= bound::MIN_TERMS {
        let b = bound::bound_from_terms(&terms, d.phi);
        if b.is_none() {
            notes.push(format!(
                "no oscillation bound on the Stokes ray; last term magnitude {last:.3e} as heuristic"
            ));
        }
        b
    } else {
        None
    };
    Ok(SeriesEvaluation {
        value,
        terms_used: n_terms,
        last_term_mag: last,
        error_bound,
        method: SeriesMethod::Convergent,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::asymptotic::asymptotic_ai;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exact_origin() {
        let v = convergent_ai_sector(c(0.0, 0.0), 1).unwrap().value;
        let want = 3f64.powf(-2.0 / 3.0) / super::super::GAMMA_TWO_THIRDS;
        assert!(((v.re - want) / want).abs() <= 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn sector_and_count_checks() {
        assert!(matches!(convergent_ai_sector(c(-5.0, 0.0), 10), Err(AiryError::Sector { .. })));
        assert!(convergent_ai_sector(c(5.0, 0.0), 0).is_err());
        assert!(convergent_ai_sector(c(f64::NAN, 0.0), 10).is_err());
    }

    #[test]
    fn reference_values() {
        // Ai(1), Ai(5), Ai(-5 rotated) checked elsewhere; here the positive axis
        let v = convergent_ai_sector(c(5.0, 0.0), 500).unwrap().value;
        let want = 1.083_444_281_360_744_1e-4;
        assert!(((v.re - want) / want).abs() < 1e-8, "{v}");
        assert!(v.im.abs() < 1e-20);
    }

    #[test]
    fn first_sum_is_damped_f_series() {
        let z = c(6.0, 2.0);
        let t = convergent_terms(z, 40).unwrap();
        let d = PhaseDecomposition::new(z);
        let x = 4.0 / 3.0 * d.r.powf(1.5);
        let logs = f_coefficient_logs(40);
        for n in 0..40 {
            let nf = n as f64;
            let f_log = logs[n] - 1.5 * nf * d.r.ln();
            let p = ln_regularized_lower_p(nf + 0.5, x).unwrap();
            assert!((t.s1[n].log_mag - p - f_log).abs() <= 4.0 * f64::EPSILON * f_log.abs().max(1.0));
            assert!(p < 0.0);
        }
        // large modulus: P → 1 for the leading terms
        let far = convergent_terms(c(30.0, 0.0), 3).unwrap();
        let logs = f_coefficient_logs(3);
        assert!((far.s1[1].log_mag - (logs[1] - 1.5 * 30f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_asymptotic_far_out() {
        let z = c(7.0, 3.0);
        let a = convergent_ai_sector(z, 500).unwrap().value;
        let b = asymptotic_ai(z).unwrap().value;
        assert!((a - b).norm() <= 1e-9 * b.norm());
    }

    #[test]
    fn refuses_terms_past_coefficient_overflow() {
        assert!(matches!(convergent_terms(c(5.0, 0.0), MAX_TERMS + 1), Err(AiryError::Domain(_))));
    }
}
