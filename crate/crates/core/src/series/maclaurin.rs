//! Power series about the origin.
//!
//! `Ai(z) = 3^{−2/3}/π · Σ Γ((n+1)/3) sin(2(n+1)π/3) (3^{1/3}z)^n / n!`.
//! The trigonometric factor cycles through `√3/2, −√3/2, 0`, so only
//! `n ≡ 0, 1 (mod 3)` contribute and each chain follows
//! `T_{n+3} = T_n · z³ / ((n+2)(n+3))`.

use num_complex::Complex64;

use super::{SeriesEvaluation, SeriesMethod, GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS};

/// Which combination of the two chains to return.
#[derive(Clone, Copy)]
enum Kind {
    Ai,
    Bi,
}

fn run(z: Complex64, n_terms: usize, kind: Kind) -> SeriesEvaluation {
    let n_terms = n_terms.max(1);
    let z3 = z * z * z;
    let c3 = 3f64.cbrt();
    // chain 0: T_0 = Γ(1/3); chain 1: T_1 = Γ(2/3)·3^{1/3}·z
    let mut t0 = Complex64::new(GAMMA_ONE_THIRD, 0.0);
    let mut t1 = z * (GAMMA_TWO_THIRDS * c3);
    let mut s0 = Complex64::new(0.0, 0.0);
    let mut s1 = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    let mut n = 0usize;
    while n < n_terms {
        s0 += t0;
        last = t0.norm();
        if n + 1 < n_terms {
            s1 += t1;
            last = t1.norm();
        }
        let nf = n as f64;
        t0 = t0 * z3 / ((nf + 2.0) * (nf + 3.0));
        t1 = t1 * z3 / ((nf + 3.0) * (nf + 4.0));
        n += 3;
    }
    let half_root3 = 0.75f64.sqrt();
    let (value, scale) = match kind {
        Kind::Ai => {
            let k = 3f64.powf(-2.0 / 3.0) / std::f64::consts::PI * half_root3;
            ((s0 - s1) * k, k)
        }
        Kind::Bi => {
            let k = 3f64.powf(-1.0 / 6.0) / std::f64::consts::PI * half_root3;
            ((s0 + s1) * k, k)
        }
    };
    SeriesEvaluation {
        value,
        terms_used: n_terms,
        last_term_mag: last * scale,
        error_bound: None,
        method: SeriesMethod::Maclaurin,
        notes: Vec::new(),
    }
}

/// Partial sum of the Maclaurin series of `Ai` through `n = N−1`.
pub fn maclaurin_ai(z: Complex64, n_terms: usize) -> SeriesEvaluation {
    run(z, n_terms, Kind::Ai)
}

/// Partial sum of the Maclaurin series of `Bi` through `n = N−1`.
pub fn maclaurin_bi(z: Complex64, n_terms: usize) -> SeriesEvaluation {
    run(z, n_terms, Kind::Bi)
}
