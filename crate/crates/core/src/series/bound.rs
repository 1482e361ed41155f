//! Error estimate from the oscillation of partial sums.
//!
//! Consecutive terms of each sum turn by a nearly constant angle `δ`
//! (`π ∓ 3φ/2` up to sign flips of the coefficients), so the partial sums
//! circle the limit with extrema about `π/|δ|` terms apart. The spread of
//! the last `⌈π/|δ|⌉ + 1` partial sums brackets the limit; its diameter is
//! the bound. On the Stokes rays `δ ≡ 0`, the sums approach the limit
//! monotonically, and no bound is produced.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::convergent::{convergent_terms, scaled_partial_sums, ConvergentTerms};
use super::{in_sector, on_stokes_ray, PhaseDecomposition};
use crate::logscaled::LogPolar;

/// Fewest terms for which a bound is attempted.
pub const MIN_TERMS: usize = 8;

/// Distance in `n` between successive solutions of `δ·n = (2k+1)π`.
pub fn extremum_spacing(delta: f64) -> f64 {
    2.0 * PI / delta.abs()
}

fn wrap(a: f64) -> f64 {
    let mut x = a.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

/// Diameter of the last oscillation window of one sum, absolute.
fn series_bound(terms: &[LogPolar], log_pref: Complex64) -> Option<f64> {
    let n = terms.len();
    if n < MIN_TERMS {
        return None;
    }
    let (a, b) = (terms[n - 1], terms[n - 2]);
    if a.is_zero() || b.is_zero() {
        return Some(0.0);
    }
    let delta = wrap(a.phase - b.phase);
    if delta.abs() < 1e-9 {
        return None;
    }
    let window = ((PI / delta.abs()).ceil() as usize + 1).max(2).min(n);
    let (sums, shift) = scaled_partial_sums(&terms[n - window..]);
    let (mut lo, mut hi) = (
        Complex64::new(f64::INFINITY, f64::INFINITY),
        Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    // include the partial sum just before the window (offset zero)
    for s in std::iter::once(Complex64::new(0.0, 0.0)).chain(sums) {
        lo.re = lo.re.min(s.re);
        lo.im = lo.im.min(s.im);
        hi.re = hi.re.max(s.re);
        hi.im = hi.im.max(s.im);
    }
    let spread = (hi.re - lo.re).hypot(hi.im - lo.im);
    Some(spread * (log_pref.re + shift).exp())
}

pub(crate) fn bound_from_terms(terms: &ConvergentTerms, phi: f64) -> Option<f64> {
    if on_stokes_ray(phi) {
        return None;
    }
    let mut total = 0.0;
    for (ts, pref) in terms.groups() {
        total += series_bound(ts, pref)?;
    }
    Some(total)
}

/// Oscillation bound for the convergent expansion truncated at `N` terms:
/// the spreads of the three sums added. Absent on the rays
/// `|arg z| = 2π/3`. Outside the sector the bound of each rotated
/// evaluation is computed and the two are added.
pub fn oscillation_error_bound(z: Complex64, n_terms: usize) -> Option<f64> {
    if n_terms < MIN_TERMS || !z.re.is_finite() || !z.im.is_finite() || z == Complex64::new(0.0, 0.0) {
        return None;
    }
    let d = PhaseDecomposition::new(z);
    if in_sector(d.phi) {
        let terms = convergent_terms(z, n_terms).ok()?;
        return bound_from_terms(&terms, d.phi);
    }
    let rot = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut total = 0.0;
    for zr in [z * rot, z * rot.conj()] {
        total += oscillation_error_bound(zr, n_terms)?;
    }
    Some(total)
}
