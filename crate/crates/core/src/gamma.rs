//! Complete and incomplete gamma functions for real parameters.
//!
//! Everything here works on `f64` inputs but returns magnitudes that can sit
//! far outside the binary64 range, so the incomplete functions report their
//! results as [`LogScaled`] values.
//!
//! Strategy summary:
//! * `ln Γ` uses the Stirling series for `x ≥ 10`, a shifted product below
//!   that, and a Taylor series of `ln Γ(1+ε)` around the two zeros at 1 and 2.
//! * `P(a,x)` uses the lower power series when `x < a+1` and the complement of
//!   the Legendre continued fraction otherwise.
//! * `Γ(a,x)` uses the continued fraction directly for every order, except for
//!   small `x` (where the fraction converges too slowly) and for `a > 0` with
//!   `x < a+1`.

use crate::error::{AiryError, Result};
use crate::dd::Dd;
use crate::logscaled::{exp_split, ln_split, LogScaled};

/// Convergence settings shared by every iterative routine in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConfig {
    /// Relative change below which a series or continued fraction stops.
    pub tol: f64,
    /// Iteration cap; hitting it is reported as a convergence failure.
    pub max_iter: usize,
}

pub const GAMMA_CONFIG: GammaConfig = GammaConfig {
    tol: 1e-16,
    max_iter: 10_000,
};

/// Below this argument the continued fraction for `Γ(a,x)` needs more than
/// `85/x` iterations; the scaled recurrence in `a` is used instead.
const CF_MIN_X: f64 = 0.25;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// ζ(k) − 1 for k = 2, 3, ….
const ZETA_M1: [f64; 40] = [
    6.44934066848226406e-01,
    2.02056903159594292e-01,
    8.23232337111381857e-02,
    3.69277551433699266e-02,
    1.73430619844491402e-02,
    8.34927738192282713e-03,
    4.07735619794433960e-03,
    2.00839282608221426e-03,
    9.94575127818085256e-04,
    4.94188604119464529e-04,
    2.46086553308048320e-04,
    1.22713347578489145e-04,
    6.12481350587048277e-05,
    3.05882363070204933e-05,
    1.52822594086518710e-05,
    7.63719763789976257e-06,
    3.81729326499984022e-06,
    1.90821271655393897e-06,
    9.53962033872796212e-07,
    4.76932986787806447e-07,
    2.38450502727733004e-07,
    1.19219925965311064e-07,
    5.96081890512594801e-08,
    2.98035035146522793e-08,
    1.49015548283650427e-08,
    7.45071178983543006e-09,
    3.72533402478845728e-09,
    1.86265972351304914e-09,
    9.31327432419668166e-10,
    4.65662906503378366e-10,
    2.32831183367650534e-10,
    1.16415501727005193e-10,
    5.82077208790270145e-11,
    2.91038504449710001e-11,
    1.45519218910419849e-11,
    7.27595983505748180e-12,
    3.63797954737865086e-12,
    1.81898965030706607e-12,
    9.09494784026388841e-13,
    4.54747378304215422e-13,
];

/// B_{2k} / (2k(2k−1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Stirling remainder `μ(x) = ln Γ(x) − (x−½)ln x + x − ½ln 2π`, valid for
/// `x ≥ 10`.
pub(crate) fn stirling_correction(x: f64) -> f64 {
    let inv2 = 1.0 / (x * x);
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc / x
}

/// `ln Γ(1+ε) + ln(1+ε)` for |ε| ≤ ½, i.e. `ln Γ(2+ε)`.
fn ln_gamma_two_plus(eps: f64) -> f64 {
    let mut acc = 0.0;
    let mut pow = eps * eps;
    for (i, z) in ZETA_M1.iter().enumerate() {
        let k = (i + 2) as f64;
        let term = z * pow / k;
        acc += if i % 2 == 0 { term } else { -term };
        if term.abs() < 1e-20 * acc.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        pow *= eps;
    }
    eps * (1.0 - EULER_GAMMA) + acc
}

/// `ln Γ(x)` for finite `x > 0`; no argument checks.
pub(crate) fn lgamma(x: f64) -> f64 {
    if x >= 10.0 {
        return (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_correction(x);
    }
    if x < 0.5 {
        return lgamma(x + 1.0) - x.ln();
    }
    if x < 1.5 {
        let eps = x - 1.0;
        return ln_gamma_two_plus(eps) - eps.ln_1p();
    }
    if x <= 2.5 {
        return ln_gamma_two_plus(x - 2.0);
    }
    let mut y = x;
    let mut prod = 1.0;
    while y > 2.5 {
        y -= 1.0;
        prod *= y;
    }
    ln_gamma_two_plus(y - 2.0) + prod.ln()
}

/// Natural log of the gamma function for finite `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(AiryError::Domain(format!("ln_gamma needs a finite x > 0, got {x}")));
    }
    Ok(lgamma(x))
}

/// `ln(1+d) − d`, accurate near d = 0.
fn log1pmx(d: f64) -> f64 {
    if d.abs() > 0.3 {
        return d.ln_1p() - d;
    }
    let mut acc = 0.0;
    let mut pow = d * d;
    let mut k = 2.0;
    loop {
        let term = pow / k;
        acc -= term;
        if term.abs() <= 1e-17 * acc.abs() {
            break;
        }
        pow *= -d;
        k += 1.0;
    }
    acc
}

/// `a·ln x − x` carried in double-double.
fn ln_power_exp(a: f64, x: f64) -> Dd {
    ln_split(x).mul_f64(a).add_f64(-x)
}

/// `ln( x^a e^{−x} / Γ(a+1) )`; for large `a` the cancellation between the
/// power and `Γ(a+1)` is removed analytically through the Stirling form.
fn ln_power_prefactor(a: f64, x: f64) -> Dd {
    if a < 10.0 {
        return ln_power_exp(a, x).add_f64(-lgamma(a + 1.0));
    }
    let tail = -0.5 * (2.0 * std::f64::consts::PI * a).ln() - stirling_correction(a);
    let d = (x - a) / a;
    if d.abs() <= 0.3 {
        return Dd::new(a * log1pmx(d), tail);
    }
    // a·ln(x/a) + (a − x)
    let lt = ln_split(x).add(ln_split(a).neg());
    lt.mul_f64(a).add_f64(a).add_f64(-x).add_f64(tail)
}

fn check_lower(a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(AiryError::Domain(format!("incomplete gamma needs a > 0, got {a}")));
    }
    if !(x >= 0.0) || x.is_nan() {
        return Err(AiryError::Domain(format!("incomplete gamma needs x >= 0, got {x}")));
    }
    Ok(())
}

/// `Σ x^n / ((a+1)⋯(a+n))`, the bracket of the lower series.
fn lower_series_sum(a: f64, x: f64) -> Result<f64> {
    let cfg = GAMMA_CONFIG;
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut den = a;
    for _ in 0..cfg.max_iter {
        den += 1.0;
        term *= x / den;
        sum += term;
        if term < cfg.tol * sum {
            return Ok(sum);
        }
    }
    Err(AiryError::Convergence {
        what: "lower incomplete gamma series",
        iterations: cfg.max_iter,
    })
}

/// Modified Lentz evaluation of the scaled upper function
/// `Γ(a,x)·eˣ·x^{−a}` by the Legendre continued fraction.
fn upper_continued_fraction(a: f64, x: f64) -> Result<f64> {
    let cfg = GAMMA_CONFIG;
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = if b.abs() < tiny { 1.0 / tiny } else { 1.0 / b };
    let mut h = d;
    for i in 1..=cfg.max_iter {
        let fi = i as f64;
        let an = -fi * (fi - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < cfg.tol {
            return Ok(h);
        }
    }
    Err(AiryError::Convergence {
        what: "upper incomplete gamma continued fraction",
        iterations: cfg.max_iter,
    })
}

/// `ln P(a,x)` for `x < a+1`, without underflow.
fn ln_lower_p_series(a: f64, x: f64) -> Result<Dd> {
    Ok(ln_power_prefactor(a, x).add_f64(lower_series_sum(a, x)?.ln()))
}

/// `Q(a,x) = 1 − P(a,x)` for `x ≥ a+1`, `a > 0`.
fn upper_q_fraction(a: f64, x: f64) -> Result<f64> {
    let h = upper_continued_fraction(a, x)?;
    let l = ln_power_prefactor(a, x).add_f64(a.ln()).add_f64(h.ln());
    Ok(exp_split(l.hi, l.lo))
}

/// Regularized lower incomplete gamma `P(a,x) = γ(a,x)/Γ(a)`.
pub fn regularized_lower_p(a: f64, x: f64) -> Result<f64> {
    check_lower(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    if x < a + 1.0 {
        let l = ln_lower_p_series(a, x)?;
        Ok(exp_split(l.hi, l.lo).min(1.0))
    } else {
        Ok((1.0 - upper_q_fraction(a, x)?).max(0.0))
    }
}

/// `ln P(a,x)`; stays finite where `P` itself underflows.
pub fn ln_regularized_lower_p(a: f64, x: f64) -> Result<f64> {
    check_lower(a, x)?;
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x < a + 1.0 {
        let l = ln_lower_p_series(a, x)?;
        Ok(l.hi + l.lo)
    } else {
        Ok((-upper_q_fraction(a, x)?).ln_1p())
    }
}

/// Lower incomplete gamma `γ(a,x)` in log-scaled form.
pub fn lower_incomplete_log(a: f64, x: f64) -> Result<LogScaled> {
    check_lower(a, x)?;
    if x == 0.0 {
        return Ok(LogScaled::ZERO);
    }
    if x.is_infinite() {
        return Ok(LogScaled::from_log(lgamma(a)));
    }
    if x < a + 1.0 {
        let s = lower_series_sum(a, x)?;
        let l = ln_power_exp(a, x).add_f64(s.ln() - a.ln());
        Ok(LogScaled::from_dd(1, l))
    } else {
        let q = upper_q_fraction(a, x)?;
        Ok(LogScaled::from_log(lgamma(a) + (-q).ln_1p()))
    }
}

fn check_upper(a: f64, x: f64) -> Result<()> {
    if !a.is_finite() {
        return Err(AiryError::Domain(format!("upper incomplete gamma needs finite a, got {a}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(AiryError::Domain(format!(
            "upper incomplete gamma needs finite x > 0, got {x}"
        )));
    }
    Ok(())
}

enum UpperRoute {
    Fraction,
    Complement,
    Recurrence,
}

fn upper_route(a: f64, x: f64) -> UpperRoute {
    if x >= CF_MIN_X && (a <= 1.0 || x >= a + 1.0) {
        UpperRoute::Fraction
    } else if a > 0.0 {
        UpperRoute::Complement
    } else {
        UpperRoute::Recurrence
    }
}

/// Scaled value `Γ(a,x)·eˣ·x^{−a}` for `a ≤ 0`, `x` small: start at the
/// fractional order in (0,1] and step down with `g_{a} = (x·g_{a+1} − 1)/a`.
/// Both terms share a sign when `x` is small, so there is no cancellation.
fn upper_scaled_recurrence(a: f64, x: f64) -> Result<f64> {
    let steps = (1.0 - a).floor();
    let mut order = a + steps;
    if order > 1.0 {
        order -= 1.0;
    }
    let base = lgamma(order) + (-regularized_lower_p(order, x)?).ln_1p() + x - order * x.ln();
    let mut g = base.exp();
    while order - a > 0.5 {
        order -= 1.0;
        g = (x * g - 1.0) / order;
    }
    Ok(g)
}

/// Upper incomplete gamma `Γ(a,x) = ∫ₓ^∞ t^{a−1}e^{−t} dt` for any finite
/// real `a` and `x > 0`.
pub fn upper_incomplete(a: f64, x: f64) -> Result<LogScaled> {
    check_upper(a, x)?;
    let log = match upper_route(a, x) {
        UpperRoute::Fraction => ln_power_exp(a, x).add_f64(upper_continued_fraction(a, x)?.ln()),
        UpperRoute::Recurrence => ln_power_exp(a, x).add_f64(upper_scaled_recurrence(a, x)?.ln()),
        UpperRoute::Complement => {
            let p = regularized_lower_p(a, x)?;
            Dd::new(lgamma(a), (-p).ln_1p())
        }
    };
    Ok(LogScaled::from_dd(1, log))
}

/// `Γ(a,x)·eˣ·x^{−a}`; overflows to infinity only for large positive `a`
/// with small `x`.
pub fn upper_incomplete_scaled(a: f64, x: f64) -> Result<f64> {
    check_upper(a, x)?;
    match upper_route(a, x) {
        UpperRoute::Fraction => upper_continued_fraction(a, x),
        UpperRoute::Recurrence => upper_scaled_recurrence(a, x),
        UpperRoute::Complement => {
            let p = regularized_lower_p(a, x)?;
            Ok((lgamma(a) + (-p).ln_1p() + x - a * x.ln()).exp())
        }
    }
}
