//! Steepest-descent contours of the exponent `f(w, α) = wα − α³/3`.
//!
//! The contour through the saddle `α_s = −w^{1/2}` has three pieces. The
//! middle piece (II) solves `f(w, α) = f(w, α_s) − s²` for real
//! `|s| < 2/√3`; the outer pieces (I for `s < 0`, III for `s > 0`) are
//! parametrised by `ŝ = |s|^{−2/3}` and solve
//! `wα − α³/3 + (2/3)w^{3/2} + ŝ^{−3} = 0` in closed form.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::coeffs::middle::{middle_magnitudes, scaled_middle, unit_pow};
use crate::error::{domain, AiryError, Result};
use crate::series::in_sector;

/// Radius `2/√3` of the middle segment.
pub const MIDDLE_RADIUS: f64 = 1.154_700_538_379_251_5;

/// Fraction of [`MIDDLE_RADIUS`] beyond which the series gives way to root
/// tracking.
pub const SERIES_FRACTION: f64 = 0.9;

const SERIES_TERMS: usize = 800;
const NEWTON_TOL: f64 = 1e-12;
const TRACK_STEP: f64 = 0.005;

fn hat_max() -> f64 {
    0.75f64.cbrt()
}

fn magnitudes() -> &'static [f64] {
    static R: OnceLock<Vec<f64>> = OnceLock::new();
    R.get_or_init(|| middle_magnitudes(SERIES_TERMS))
}

/// Contour piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    I,
    II,
    III,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Segment::I => "I",
            Segment::II => "II",
            Segment::III => "III",
        })
    }
}

/// A point on a contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub segment: Segment,
    /// `s` on segment II, `ŝ` on I and III.
    pub param: f64,
    pub alpha: Complex64,
    pub f_value: Complex64,
    pub f_real: f64,
    pub f_imag: f64,
}

/// Samples of one contour in the direction of increasing `s`, together with
/// notes on branch tracking.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    pub w: Complex64,
    pub samples: Vec<PathSample>,
    pub notes: Vec<String>,
}

fn check_unit(w: Complex64) -> Result<()> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(AiryError::NonFinite);
    }
    if (w.norm() - 1.0).abs() > 1e-12 {
        return domain(format!("w must lie on the unit circle, got |w| = {}", w.norm()));
    }
    Ok(())
}

/// `(−w^{1/2}, +w^{1/2})` with the principal square root.
pub fn saddle_points(w: Complex64) -> (Complex64, Complex64) {
    let r = w.sqrt();
    (-r, r)
}

/// Real and imaginary parts of `wα − α³/3` from their component formulas.
pub fn exponent_field(w: Complex64, alpha: Complex64) -> (f64, f64) {
    let (c, d) = (w.re, w.im);
    let (x, y) = (alpha.re, alpha.im);
    let f_real = c * x - d * y - (x * x * x - 3.0 * x * y * y) / 3.0;
    let f_imag = c * y + d * x - (3.0 * x * x * y - y * y * y) / 3.0;
    (f_real, f_imag)
}

fn exponent(w: Complex64, alpha: Complex64) -> Complex64 {
    w * alpha - alpha * alpha * alpha / 3.0
}

/// `(2/3) w^{3/2}`, the offset `f(w, α) − f(w, α_s)` is measured from.
fn saddle_offset(w: Complex64) -> Complex64 {
    unit_pow(w, 1.5) * (2.0 / 3.0)
}

/// Residual of `wα − α³/3 + (2/3)w^{3/2} + s² = 0`.
pub fn middle_residual(w: Complex64, s: f64, alpha: Complex64) -> Complex64 {
    exponent(w, alpha) + saddle_offset(w) + s * s
}

/// Residual of `wα − α³/3 + (2/3)w^{3/2} + ŝ^{−3} = 0`.
pub fn outer_residual(w: Complex64, s_hat: f64, alpha: Complex64) -> Complex64 {
    exponent(w, alpha) + saddle_offset(w) + s_hat.powi(-3)
}

fn middle_series(w: Complex64, s: f64) -> Complex64 {
    let r = magnitudes();
    let mut sum = -w.sqrt();
    let mut sp = 1.0;
    for (n, &rn) in r.iter().enumerate().skip(1) {
        sp *= s;
        let t = scaled_middle(n, rn * sp, w);
        sum += t;
        if t.norm() <= 1e-17 * sum.norm() && n > 4 {
            break;
        }
    }
    sum
}

fn newton(w: Complex64, c: Complex64, mut alpha: Complex64) -> Result<Complex64> {
    let scale = 1.0 + c.norm();
    for _ in 0..60 {
        let f = exponent(w, alpha) + c;
        if f.norm() <= 1e-15 * scale {
            return Ok(alpha);
        }
        let d = w - alpha * alpha;
        if d.norm() == 0.0 {
            break;
        }
        alpha -= f / d;
    }
    let f = exponent(w, alpha) + c;
    if f.norm() <= NEWTON_TOL * scale {
        Ok(alpha)
    } else {
        Err(AiryError::Convergence {
            what: "cubic root tracking",
            iterations: 60,
        })
    }
}

/// Point of segment II at parameter `s`, `|s| < 2/√3`.
pub fn alpha_middle(w: Complex64, s: f64) -> Result<Complex64> {
    check_unit(w)?;
    if !s.is_finite() || s.abs() >= MIDDLE_RADIUS {
        return domain(format!("middle segment needs |s| < 2/sqrt(3), got {s}"));
    }
    let edge = SERIES_FRACTION * MIDDLE_RADIUS;
    if s.abs() <= edge {
        return Ok(middle_series(w, s));
    }
    // continue from the series value along real s
    let off = saddle_offset(w);
    let mut t = edge.copysign(s);
    let mut alpha = middle_series(w, t);
    let steps = ((s.abs() - edge) / TRACK_STEP).ceil().max(1.0) as usize;
    let h = (s - t) / steps as f64;
    for _ in 0..steps {
        let d = w - alpha * alpha;
        let guess = if d.norm() > 1e-8 { alpha - d.inv() * (2.0 * t * h) } else { alpha };
        t += h;
        alpha = newton(w, off + t * t, guess)?;
    }
    Ok(alpha)
}

/// The three Cardano roots `α_1, α_2, α_3` of the outer cubic with principal
/// square and cube roots.
pub fn outer_roots(w: Complex64, s_hat: f64) -> [Complex64; 3] {
    let t = w.sqrt() * s_hat;
    let t3 = t * t * t;
    let eta = (t3 * 4.0 + 3.0).sqrt();
    let chi = (t3 * 2.0 + 3.0 + eta * 3f64.sqrt()).cbrt();
    let u = chi * 2f64.powf(-1.0 / 3.0);
    let v = t * t * 2f64.cbrt() / chi;
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut wk = Complex64::new(1.0, 0.0);
    for root in out.iter_mut() {
        *root = (wk * u + wk.conj() * v) / s_hat;
        wk *= omega;
    }
    out
}

/// `α_2` (segment III) or `α_3` (segment I) at `ŝ ∈ (0, (3/4)^{1/3}]`.
pub fn alpha_outer(w: Complex64, s_hat: f64, branch: u8) -> Result<Complex64> {
    check_unit(w)?;
    if !(s_hat > 0.0 && s_hat <= hat_max() * (1.0 + 1e-15)) {
        return domain(format!("outer segment needs 0 < s_hat <= (3/4)^(1/3), got {s_hat}"));
    }
    match branch {
        2 | 3 => Ok(outer_roots(w, s_hat)[usize::from(branch) - 1]),
        _ => domain(format!("outer branch must be 2 or 3, got {branch}")),
    }
}

fn sample(w: Complex64, segment: Segment, param: f64, alpha: Complex64) -> PathSample {
    let (f_real, f_imag) = exponent_field(w, alpha);
    PathSample {
        segment,
        param,
        alpha,
        f_value: exponent(w, alpha),
        f_real,
        f_imag,
    }
}

/// Outer segment from small `ŝ` (far end) to the junction, following the
/// root continuous with `branch`. Flips away from the principal labelling
/// are reported.
fn track_outer(w: Complex64, grid: &[f64], branch: u8, notes: &mut Vec<String>) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(grid.len());
    let nominal = usize::from(branch) - 1;
    let mut current = nominal;
    for &sh in grid {
        let roots = outer_roots(w, sh);
        let pick = match out.last() {
            None => nominal,
            Some(prev) => (0..3)
                .min_by(|&a, &b| (roots[a] - prev).norm().total_cmp(&(roots[b] - prev).norm()))
                .unwrap_or(nominal),
        };
        if pick != current {
            notes.push(format!(
                "branch {branch}: principal root label changed from {} to {} at s_hat = {sh:.6}",
                current + 1,
                pick + 1
            ));
            current = pick;
        }
        out.push(roots[pick]);
    }
    out
}

/// Samples the contour through `−w^{1/2}` for `|arg w| ≤ 2π/3`:
/// `n_per_segment` points on each piece, segments I and III covering
/// `|s| ≤ s_max`.
pub fn sample_paths(w: Complex64, n_per_segment: usize, s_max: f64) -> Result<Contour> {
    check_unit(w)?;
    let phi = w.arg();
    if !in_sector(phi) {
        return Err(AiryError::Sector { phi });
    }
    if n_per_segment < 2 {
        return domain("need at least 2 samples per segment");
    }
    if !(s_max > MIDDLE_RADIUS) || !s_max.is_finite() {
        return domain(format!("s_max must exceed 2/sqrt(3), got {s_max}"));
    }
    let n = n_per_segment;
    let hmin = s_max.powf(-2.0 / 3.0);
    let hmax = hat_max();
    // ŝ from the far end towards the junction, excluding hmin
    let far_to_junction: Vec<f64> = (1..=n)
        .map(|j| if j == n { hmax } else { hmin + (hmax - hmin) * j as f64 / n as f64 })
        .collect();
    let mut notes = Vec::new();
    let seg1 = track_outer(w, &far_to_junction, 3, &mut notes);
    let seg3 = track_outer(w, &far_to_junction, 2, &mut notes);

    let mut samples = Vec::with_capacity(3 * n);
    for (&sh, &a) in far_to_junction.iter().zip(&seg1) {
        samples.push(sample(w, Segment::I, sh, a));
    }
    for j in 0..n {
        let s = -MIDDLE_RADIUS + 2.0 * MIDDLE_RADIUS * (j + 1) as f64 / (n + 1) as f64;
        samples.push(sample(w, Segment::II, s, alpha_middle(w, s)?));
    }
    for (&sh, &a) in far_to_junction.iter().zip(&seg3).rev() {
        samples.push(sample(w, Segment::III, sh, a));
    }

    // junction continuity against the middle piece
    let eps = 1e-4;
    for (sign, end) in [(-1.0, seg1[n - 1]), (1.0, seg3[n - 1])] {
        let a1 = alpha_middle(w, sign * (MIDDLE_RADIUS - eps))?;
        let a2 = alpha_middle(w, sign * (MIDDLE_RADIUS - 2.0 * eps))?;
        let gap = (a1 * 2.0 - a2 - end).norm();
        if gap > 1e-6 {
            notes.push(format!("junction at s = {:+.6}: gap {gap:.3e}", sign * MIDDLE_RADIUS));
        }
    }
    Ok(Contour { w, samples, notes })
}

/// Contours for `|arg w| > 2π/3`: the two single-saddle problems at
/// `w·e^{±i2π/3}`, matching the rotation identity for `Ai`.
pub fn sample_rotated_paths(w: Complex64, n_per_segment: usize, s_max: f64) -> Result<[Contour; 2]> {
    check_unit(w)?;
    let phi = w.arg();
    if in_sector(phi) {
        return Err(AiryError::Misuse { phi });
    }
    let rot = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let a = sample_paths(w * rot, n_per_segment, s_max)?;
    let b = sample_paths(w * rot.conj(), n_per_segment, s_max)?;
    Ok([a, b])
}

/// Contours for an arbitrary phase: one when `|φ| ≤ 2π/3`, else two.
pub fn contours_for_phase(phi: f64, n_per_segment: usize, s_max: f64) -> Result<Vec<Contour>> {
    let w = Complex64::from_polar(1.0, phi);
    if in_sector(w.arg()) {
        Ok(vec![sample_paths(w, n_per_segment, s_max)?])
    } else {
        Ok(sample_rotated_paths(w, n_per_segment, s_max)?.to_vec())
    }
}
