//! Sign and natural-log magnitude pairs.
//!
//! Gamma-dominated series terms such as `Γ(3n+½)` or `Γ(1/3−n, x)` leave the
//! binary64 range long before the series has converged. Carrying them as
//! `(sign, ln|v|)` keeps every intermediate product finite; the conversion to
//! `f64` is postponed until the term is combined with its (small) partner
//! factors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-01;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;

use crate::dd::{two_prod, two_sum, Dd};

/// `ln x` for finite `x > 0` as an unevaluated sum `hi + lo`, split through
/// the binary exponent so the large part `k·ln 2` is carried exactly.
pub(crate) fn ln_split(x: f64) -> Dd {
    debug_assert!(x > 0.0 && x.is_finite());
    let (mut m, mut k) = (x, 0i32);
    if m < f64::MIN_POSITIVE {
        m *= 2f64.powi(64);
        k -= 64;
    }
    let bits = m.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i32 - 1023;
    k += e;
    m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        k += 1;
    }
    let kf = f64::from(k);
    let (h, l) = two_sum(kf * LN2_HI, m.ln());
    Dd::new(h, l + kf * LN2_LO)
}

/// `exp(hi + lo)` with the reduction done against the split `ln 2`.
pub(crate) fn exp_split(hi: f64, lo: f64) -> f64 {
    if hi > 710.0 {
        return f64::INFINITY;
    }
    if hi < -746.0 {
        return 0.0;
    }
    let k = (hi / std::f64::consts::LN_2).round();
    let r = (hi - k * LN2_HI) - k * LN2_LO + lo;
    let k = k as i32;
    let e = r.exp();
    if k < -1000 {
        e * 2f64.powi(k + 200) * 2f64.powi(-200)
    } else if k > 1000 {
        e * 2f64.powi(k - 100) * 2f64.powi(100)
    } else {
        e * 2f64.powi(k)
    }
}

/// A real number stored as `sign · exp(log_mag)`.
///
/// The log magnitude is held as an unevaluated double-double sum so that a
/// value like `1e300`, whose log is near 690, still converts back to
/// binary64 within a couple of ulp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    sign: i8,
    log_mag: f64,
    lo: f64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
        lo: 0.0,
    };
    pub const ONE: LogScaled = LogScaled {
        sign: 1,
        log_mag: 0.0,
        lo: 0.0,
    };

    /// Builds a value from its parts. A zero sign or a `log_mag` of `-inf`
    /// collapses to [`LogScaled::ZERO`].
    pub fn new(sign: i8, log_mag: f64) -> Self {
        Self::with_parts(sign, log_mag, 0.0)
    }

    /// Like [`LogScaled::new`] with an extra low-order log term: the
    /// magnitude is `exp(hi + lo)`.
    pub fn with_parts(sign: i8, hi: f64, lo: f64) -> Self {
        if sign == 0 || hi == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        debug_assert!(hi.is_finite(), "log magnitude must be finite");
        let (h, l) = two_sum(hi, lo);
        LogScaled {
            sign: sign.signum(),
            log_mag: h,
            lo: l,
        }
    }

    /// Positive value `exp(log_mag)`.
    pub fn from_log(log_mag: f64) -> Self {
        Self::new(1, log_mag)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::ZERO;
        }
        let l = ln_split(x.abs());
        Self::with_parts(if x > 0.0 { 1 } else { -1 }, l.hi, l.lo)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude, rounded to `f64`; `-inf` for zero.
    pub fn log_mag(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.log_mag
        }
    }

    pub(crate) fn from_dd(sign: i8, l: Dd) -> Self {
        Self::with_parts(sign, l.hi, l.lo)
    }

    /// Log magnitude as `(hi, lo)` with `hi + lo` the full value.
    pub fn log_parts(&self) -> (f64, f64) {
        (self.log_mag(), if self.sign == 0 { 0.0 } else { self.lo })
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        LogScaled {
            sign: self.sign.abs(),
            ..self
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * exp_split(self.log_mag, self.lo),
        }
    }

    /// Splits the value as `(mantissa, exponent)` with `1 ≤ |mantissa| < 10`;
    /// handy for printing values outside the binary64 range.
    pub fn to_decimal_parts(self) -> (f64, i64) {
        if self.sign == 0 {
            return (0.0, 0);
        }
        let l10 = (self.log_mag + self.lo) / std::f64::consts::LN_10;
        let mut e = l10.floor();
        let mut m = 10f64.powf(l10 - e);
        if m >= 10.0 {
            m /= 10.0;
            e += 1.0;
        }
        (f64::from(self.sign) * m, e as i64)
    }

    pub fn powi(self, k: i32) -> Self {
        if self.sign == 0 {
            return if k == 0 { Self::ONE } else { Self::ZERO };
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        let kf = f64::from(k);
        let (p, e) = two_prod(self.log_mag, kf);
        Self::with_parts(sign, p, e + self.lo * kf)
    }

    /// Signed sum, computed relative to the larger magnitude.
    pub fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_mag + self.lo >= other.log_mag + other.lo {
            (self, other)
        } else {
            (other, self)
        };
        let ratio = exp_split(small.log_mag - big.log_mag, small.lo - big.lo);
        let scale = if big.sign == small.sign {
            ratio.ln_1p()
        } else if ratio >= 1.0 {
            return Self::ZERO;
        } else {
            (-ratio).ln_1p()
        };
        Self::with_parts(big.sign, big.log_mag, big.lo + scale)
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(-other)
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        let (h, l) = two_sum(self.log_mag, rhs.log_mag);
        Self::with_parts(self.sign * rhs.sign, h, l + self.lo + rhs.lo)
    }
}

impl Div for LogScaled {
    type Output = LogScaled;
    /// Division by zero yields a NaN magnitude; callers check for zero first.
    fn div(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        if rhs.sign == 0 {
            return LogScaled {
                sign: self.sign,
                log_mag: f64::NAN,
                lo: 0.0,
            };
        }
        let (h, l) = two_sum(self.log_mag, -rhs.log_mag);
        Self::with_parts(self.sign * rhs.sign, h, l + self.lo - rhs.lo)
    }
}

impl Neg for LogScaled {
    type Output = LogScaled;
    fn neg(self) -> Self {
        LogScaled {
            sign: -self.sign,
            ..self
        }
    }
}

impl PartialOrd for LogScaled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => (self.log_mag, self.lo).partial_cmp(&(other.log_mag, other.lo)),
                _ => (other.log_mag, other.lo).partial_cmp(&(self.log_mag, self.lo)),
            },
            ord => Some(ord),
        }
    }
}

impl From<f64> for LogScaled {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Display for LogScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.to_decimal_parts();
        write!(f, "{m:.16}e{e}")
    }
}


/// A complex number stored as `exp(log_mag)·e^{i·phase}`.
///
/// Used for series terms whose modulus leaves the binary64 range while the
/// phase is known in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPolar {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogPolar {
    pub const ZERO: LogPolar = LogPolar {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        LogPolar { log_mag, phase }
    }

    pub fn from_real(x: LogScaled) -> Self {
        if x.is_zero() {
            return Self::ZERO;
        }
        let (hi, lo) = x.log_parts();
        let phase = if x.sign() < 0 { std::f64::consts::PI } else { 0.0 };
        LogPolar::new(hi + lo, phase)
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn mul(self, o: LogPolar) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::ZERO;
        }
        LogPolar::new(self.log_mag + o.log_mag, self.phase + o.phase)
    }

    /// `exp(log_mag − shift)·e^{i·phase}` as a binary64 complex.
    pub fn to_complex_scaled(self, shift: f64) -> num_complex::Complex64 {
        if self.is_zero() {
            return num_complex::Complex64::new(0.0, 0.0);
        }
        num_complex::Complex64::from_polar((self.log_mag - shift).exp(), self.phase)
    }
}
