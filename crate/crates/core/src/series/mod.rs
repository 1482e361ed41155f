//! Series evaluators for `Ai` and `Bi`: Maclaurin, classical asymptotic with
//! optimal truncation, and the convergent incomplete-gamma expansion.

pub mod asymptotic;
pub mod bound;
pub mod convergent;
pub mod maclaurin;

use std::fmt;

use num_complex::Complex64;

pub use asymptotic::{
    asymptotic_ai, asymptotic_ai_neg_axis, asymptotic_bi, asymptotic_term_log, optimal_truncation_index,
    AsymptoticSeries,
};
pub use bound::{extremum_spacing, oscillation_error_bound};
pub use convergent::{convergent_ai_sector, convergent_partial_sums, convergent_terms, ConvergentTerms, MAX_TERMS};
pub use maclaurin::{maclaurin_ai, maclaurin_bi};

pub(crate) const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;
pub(crate) const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;

/// Half-width of the band around `|arg z| = 2π/3` treated as lying on the ray.
pub const RAY_TOLERANCE: f64 = 1e-12;

/// `|φ| ≤ 2π/3`, with the boundary rays counted as inside.
pub fn in_sector(phi: f64) -> bool {
    phi.abs() <= 2.0 * std::f64::consts::FRAC_PI_3 + RAY_TOLERANCE
}

/// `|φ| = 2π/3` within [`RAY_TOLERANCE`].
pub fn on_stokes_ray(phi: f64) -> bool {
    (phi.abs() - 2.0 * std::f64::consts::FRAC_PI_3).abs() <= RAY_TOLERANCE
}

/// Polar split of a complex argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDecomposition {
    pub r: f64,
    /// Principal argument in `(−π, π]`.
    pub phi: f64,
    /// `e^{iφ}`.
    pub w: Complex64,
    pub z: Complex64,
}

impl PhaseDecomposition {
    pub fn new(z: Complex64) -> Self {
        let r = z.norm();
        let mut phi = z.im.atan2(z.re);
        if phi == -std::f64::consts::PI {
            phi = std::f64::consts::PI;
        }
        PhaseDecomposition {
            r,
            phi,
            w: Complex64::from_polar(1.0, phi),
            z,
        }
    }

    /// Natural log of `z` on the principal branch.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.r.ln(), self.phi)
    }

    /// Principal power `z^p`.
    pub fn pow(&self, p: f64) -> Complex64 {
        (self.ln() * p).exp()
    }

    /// `ζ = (2/3) z^{3/2}`.
    pub fn zeta(&self) -> Complex64 {
        self.pow(1.5) * (2.0 / 3.0)
    }
}

/// Which expansion produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesMethod {
    Maclaurin,
    Asymptotic,
    Convergent,
}

impl fmt::Display for SeriesMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesMethod::Maclaurin => "maclaurin",
            SeriesMethod::Asymptotic => "asymptotic",
            SeriesMethod::Convergent => "convergent",
        })
    }
}

/// Value and diagnostics of one expansion run.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    pub value: Complex64,
    pub terms_used: usize,
    /// Modulus of the last term included in the sum.
    pub last_term_mag: f64,
    /// Absolute error estimate when the method supplies one.
    pub error_bound: Option<f64>,
    pub method: SeriesMethod,
    pub notes: Vec<String>,
}
