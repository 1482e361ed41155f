//! Accuracy grids, convergence profiles and error-bound maps.
//!
//! All three compute their points in parallel and sort rows by `(y, x)`
//! (or input order for profiles), so output does not depend on scheduling.

use std::f64::consts::PI;
use std::fmt::Write as _;

use airy_core::{ai, EvaluationRequest, Method};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::oracle::{oracle_ai, OracleConfig, OracleError};
use crate::BenchError;

/// Closed interval with its sampling step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x_range: (-10.0, 10.0),
            y_range: (-10.0, 10.0),
            step: 0.25,
        }
    }
}

fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

impl GridSpec {
    /// Grid points ordered by `(y, x)`.
    pub fn points(&self) -> Result<Vec<Complex64>, BenchError> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(BenchError::Usage(format!("grid step must be positive, got {}", self.step)));
        }
        if self.x_range.0 > self.x_range.1 || self.y_range.0 > self.y_range.1 {
            return Err(BenchError::Usage("grid ranges must satisfy min <= max".into()));
        }
        let xs = axis(self.x_range.0, self.x_range.1, self.step);
        let ys = axis(self.y_range.0, self.y_range.1, self.step);
        Ok(ys
            .iter()
            .flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y)))
            .collect())
    }
}

/// One accuracy measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRecord {
    pub z: Complex64,
    pub method: Method,
    pub terms: usize,
    /// Value from the method; NaN when the method has no value at `z`.
    pub value: Complex64,
    pub oracle: Complex64,
    /// `|value − oracle| / |oracle|`.
    pub accuracy: f64,
    pub log10_accuracy: f64,
    pub abs_error: f64,
    /// Oracle modulus below 1e-3 of the local envelope, where the relative
    /// measure is ill-conditioned.
    pub near_zero: bool,
}

/// Size of `Ai` ignoring its zeros: the modulus of the dominant exponential
/// terms of the asymptotic form, capped below by the value at the origin.
pub fn ai_envelope(z: Complex64) -> f64 {
    let r = z.norm();
    if r < 1.0 {
        return 0.355;
    }
    let zeta = z.powf(1.5) * (2.0 / 3.0);
    let phi = z.arg().abs();
    let mut e = (-zeta.re).exp();
    if phi > 2.0 * PI / 3.0 {
        e += zeta.re.exp();
    }
    e / (2.0 * PI.sqrt() * r.powf(0.25))
}

fn nan_c() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

/// Evaluates one point; method failures give NaN values, oracle failures
/// are errors.
pub fn measure(z: Complex64, method: Method, terms: usize, cfg: &OracleConfig) -> Result<AccuracyRecord, OracleError> {
    let oracle = oracle_ai(z, cfg)?;
    let value = ai(&EvaluationRequest::new(z).method(method).terms(terms))
        .map(|r| r.value)
        .unwrap_or_else(|_| nan_c());
    let abs_error = (value - oracle).norm();
    let accuracy = abs_error / oracle.norm();
    Ok(AccuracyRecord {
        z,
        method,
        terms,
        value,
        oracle,
        accuracy,
        log10_accuracy: accuracy.log10(),
        abs_error,
        near_zero: oracle.norm() < 1e-3 * ai_envelope(z),
    })
}

/// Accuracy of `method` with `terms` terms on every grid point.
pub fn accuracy_grid(grid: &GridSpec, method: Method, terms: usize, cfg: &OracleConfig) -> Result<Vec<AccuracyRecord>, BenchError> {
    let pts = grid.points()?;
    let mut rows = pts
        .par_iter()
        .map(|&z| measure(z, method, terms, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.z.im.total_cmp(&b.z.im).then(a.z.re.total_cmp(&b.z.re)));
    Ok(rows)
}

pub fn accuracy_csv(rows: &[AccuracyRecord]) -> String {
    let mut s = String::from("x,y,method_re,method_im,oracle_re,oracle_im,accuracy,log10_accuracy,near_zero,abs_error\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{},{:e}",
            r.z.re,
            r.z.im,
            r.value.re,
            r.value.im,
            r.oracle.re,
            r.oracle.im,
            r.accuracy,
            r.log10_accuracy,
            u8::from(r.near_zero),
            r.abs_error
        );
    }
    s
}

/// One point of a convergence profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub r: f64,
    pub phi: f64,
    pub terms: usize,
    pub accuracy: f64,
}

/// Accuracy for every `(z, N)` pair, `z` given in polar form; rows follow
/// the input order with `N` varying fastest.
pub fn convergence_profile(
    polar: &[(f64, f64)],
    terms: &[usize],
    method: Method,
    cfg: &OracleConfig,
) -> Result<Vec<ProfileRow>, BenchError> {
    if polar.is_empty() || terms.is_empty() {
        return Err(BenchError::Usage("profile needs at least one point and one N".into()));
    }
    let jobs: Vec<(f64, f64, usize)> = polar
        .iter()
        .flat_map(|&(r, phi)| terms.iter().map(move |&n| (r, phi, n)))
        .collect();
    jobs.par_iter()
        .map(|&(r, phi, n)| {
            let rec = measure(Complex64::from_polar(r, phi), method, n, cfg)?;
            Ok(ProfileRow {
                r,
                phi,
                terms: n,
                accuracy: rec.accuracy,
            })
        })
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut s = String::from("r,phi,N,accuracy\n");
    for r in rows {
        let _ = writeln!(s, "{:e},{:e},{},{:e}", r.r, r.phi, r.terms, r.accuracy);
    }
    s
}

/// Error bound against actual error at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub z: Complex64,
    pub bound: Option<f64>,
    pub actual: f64,
}

/// Oscillation bound of the convergent evaluation (summed over rotations
/// where the sector is reduced) beside its actual error.
pub fn error_bound_map(grid: &GridSpec, terms: usize, cfg: &OracleConfig) -> Result<Vec<BoundRow>, BenchError> {
    let pts = grid.points()?;
    let mut rows = pts
        .par_iter()
        .map(|&z| -> Result<BoundRow, BenchError> {
            let oracle = oracle_ai(z, cfg)?;
            let r = ai(&EvaluationRequest::new(z).method(Method::Convergent).terms(terms))?;
            Ok(BoundRow {
                z,
                bound: r.error_bound(),
                actual: (r.value - oracle).norm(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.z.im.total_cmp(&b.z.im).then(a.z.re.total_cmp(&b.z.re)));
    Ok(rows)
}

pub fn bound_csv(rows: &[BoundRow]) -> String {
    let mut s = String::from("x,y,bound,has_bound,actual_error\n");
    for r in rows {
        let (b, has) = match r.bound {
            Some(b) => (format!("{b:e}"), 1),
            None => (String::new(), 0),
        };
        let _ = writeln!(s, "{:e},{:e},{},{},{:e}", r.z.re, r.z.im, b, has, r.actual);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_are_exact_multiples() {
        let g = GridSpec {
            x_range: (-1.0, 1.0),
            y_range: (0.0, 0.5),
            step: 0.25,
        };
        let p = g.points().unwrap();
        assert_eq!(p.len(), 9 * 3);
        assert_eq!(p[0], Complex64::new(-1.0, 0.0));
        assert_eq!(p[26], Complex64::new(1.0, 0.5));
        assert_eq!(GridSpec::default().points().unwrap().len(), 6561);
        let bad = GridSpec { step: 0.0, ..g };
        assert!(bad.points().is_err());
    }

    #[test]
    fn records_describe_themselves() {
        let cfg = OracleConfig::default();
        let r = measure(Complex64::new(1.5, -2.0), Method::Maclaurin, 100, &cfg).unwrap();
        assert_eq!(r.accuracy, (r.value - r.oracle).norm() / r.oracle.norm());
        assert!(r.accuracy < 1e-14);
        assert!(!r.near_zero);
        let z0 = measure(Complex64::new(-2.338_107_410_459_767, 0.0), Method::Maclaurin, 100, &cfg).unwrap();
        assert!(z0.near_zero);
    }

    #[test]
    fn asymptotic_at_origin_is_nan_not_error() {
        let r = measure(Complex64::new(0.0, 0.0), Method::Asymptotic, 500, &OracleConfig::default()).unwrap();
        assert!(r.accuracy.is_nan());
    }

    fn unit_grid() -> GridSpec {
        GridSpec {
            x_range: (-10.0, 10.0),
            y_range: (-10.0, 10.0),
            step: 1.0,
        }
    }

    #[test]
    fn reference_examples() {
        let cfg = OracleConfig::default();
        for (z, method, tol) in [
            (Complex64::new(-5.0, 0.0), Method::Convergent, 1e-8),
            (Complex64::new(2.0, 0.0), Method::Auto, 1e-12),
            (Complex64::new(10.0, 0.0), Method::Asymptotic, 1e-14),
            (Complex64::from_polar(6.0, PI / 2.0), Method::Asymptotic, 1e-8),
            (Complex64::new(1.0, 0.0), Method::Maclaurin, 1e-15),
        ] {
            let r = measure(z, method, 500, &cfg).unwrap();
            assert!(r.accuracy <= tol, "{z} {method}: {}", r.accuracy);
        }
    }

    #[test]
    fn profile_on_the_positive_axis() {
        let cfg = OracleConfig::default();
        let rows = convergence_profile(&[(7.0, 0.0)], &[100], Method::Convergent, &cfg).unwrap();
        assert!(rows[0].accuracy <= 1e-8);
        // accuracy settles with N in the convergent regime, within a factor 10
        for r in [5.0, 6.0, 8.0] {
            for phi in [0.0, 1.0, -1.7] {
                let rows =
                    convergence_profile(&[(r, phi)], &[100, 200, 300, 400, 500], Method::Convergent, &cfg).unwrap();
                for w in rows.windows(2) {
                    assert!(w[1].accuracy <= 10.0 * w[0].accuracy.max(1e-15), "r={r} phi={phi}");
                }
            }
        }
    }

    #[test]
    fn profile_flattens_on_the_stokes_ray() {
        let cfg = OracleConfig::default();
        let rows = convergence_profile(&[(7.0, 2.0 * PI / 3.0)], &[400, 450, 500], Method::Convergent, &cfg).unwrap();
        let (a, c) = (rows[0].accuracy, rows[2].accuracy);
        assert!(a <= 1e-11 && c <= a && c >= 0.5 * a, "{a:e} {c:e}");
    }

    // The bound measures truncation only; where that falls below binary64
    // rounding of the sum the actual error is larger.
    #[test]
    #[ignore = "bound lies under the rounding floor at most points"]
    fn bound_exceeds_actual_error() {
        let rows = error_bound_map(&unit_grid(), 500, &OracleConfig::grid()).unwrap();
        let with: Vec<_> = rows.iter().filter(|r| r.bound.is_some()).collect();
        let ok = with.iter().filter(|r| r.bound.unwrap() >= r.actual).count();
        let frac = ok as f64 / with.len() as f64;
        assert!(frac >= 0.99, "{ok}/{}", with.len());
    }

    #[test]
    fn bound_exceeds_actual_error_above_rounding_level() {
        let cfg = OracleConfig::grid();
        let rows = error_bound_map(&unit_grid(), 500, &cfg).unwrap();
        let mut checked = 0;
        for r in rows.iter().filter(|r| r.bound.is_some()) {
            let scale = oracle_ai(r.z, &cfg).unwrap().norm();
            if r.actual > 1e-13 * scale {
                checked += 1;
                assert!(r.bound.unwrap() >= r.actual, "{}: {:e} < {:e}", r.z, r.bound.unwrap(), r.actual);
            }
        }
        assert!(checked >= 50, "{checked}");
    }

    #[test]
    fn bound_absent_on_ray_points_only() {
        let grid = GridSpec {
            x_range: (-6.0, 6.0),
            y_range: (-6.0, 6.0),
            step: 0.5,
        };
        for r in error_bound_map(&grid, 500, &OracleConfig::default()).unwrap() {
            if r.z == Complex64::new(0.0, 0.0) {
                continue;
            }
            let on_ray = (r.z.arg().abs() - 2.0 * PI / 3.0).abs() <= 1e-12;
            assert_eq!(r.bound.is_none(), on_ray, "{}", r.z);
        }
        let z8 = error_bound_map(
            &GridSpec {
                x_range: (8.0, 8.0),
                y_range: (0.0, 0.0),
                step: 1.0,
            },
            500,
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(z8[0].bound.unwrap() <= 1e-10);
    }

    #[test]
    fn grid_is_independent_of_thread_count() {
        let spec = GridSpec {
            x_range: (-6.0, 6.0),
            y_range: (-6.0, 6.0),
            step: 1.5,
        };
        let cfg = OracleConfig::default();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| accuracy_csv(&accuracy_grid(&spec, Method::Convergent, 200, &cfg).unwrap()));
        let b = four.install(|| accuracy_csv(&accuracy_grid(&spec, Method::Convergent, 200, &cfg).unwrap()));
        assert_eq!(a, b);
        // rows ordered by (y, x); accuracy recomputable from the emitted columns
        let mut last = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        assert_eq!(a.lines().count(), 1 + 81);
        for line in a.lines().skip(1) {
            let v: Vec<f64> = line.split(',').take(7).map(|s| s.parse().unwrap()).collect();
            assert!((v[1], v[0]) > last);
            last = (v[1], v[0]);
            let acc = (v[2] - v[4]).hypot(v[3] - v[5]) / v[4].hypot(v[5]);
            assert_eq!(acc, v[6]);
        }
    }
}
