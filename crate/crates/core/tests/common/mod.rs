#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform modulus in `[r_lo, r_hi]`, uniform phase in `(−π, π]`.
pub fn random_z(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> Complex64 {
    let r = rng.gen_range(r_lo..=r_hi);
    let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Complex64::from_polar(r, phi)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `Γ(a,x)·eˣ·x^{−a} = ∫_0^∞ exp(a·u − x(e^u − 1)) du` by quadrature,
/// split at a few multiples of the decay scale.
pub fn scaled_upper_gamma_quadrature(a: f64, x: f64) -> f64 {
    let f = move |u: f64| (a * u - x * u.exp_m1()).exp();
    // the integrand is ≤ e^{−40} beyond `end`
    let mut end = 1.0;
    while f(end) > 1e-40 || end < 1e-3 {
        end *= 1.5;
    }
    let scale = 1.0 / (a.abs() + x).max(1.0);
    let mut knots = vec![0.0];
    let mut k = scale;
    while k < end {
        knots.push(k);
        k *= 2.0;
    }
    knots.push(end);
    knots
        .windows(2)
        .map(|w| integrate(&f, w[0], w[1], 1e-16 * scale))
        .sum()
}
