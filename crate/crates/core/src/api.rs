//! Entry points for `Ai(z)` and `Bi(z)`.
//!
//! Outside `|arg z| ≤ 2π/3` the convergent expansion is applied to the two
//! rotated arguments of
//!
//! ```text
//! Ai(z) = −e^{i2π/3} Ai(e^{i2π/3} z) − e^{−i2π/3} Ai(e^{−i2π/3} z)
//! ```
//!
//! and `Bi` always goes through
//!
//! ```text
//! Bi(z) = e^{iπ/6} Ai(e^{i2π/3} z) + e^{−iπ/6} Ai(e^{−i2π/3} z).
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{domain, AiryError, Result};
use crate::series::{
    asymptotic_ai, convergent_ai_sector, in_sector, maclaurin_ai, PhaseDecomposition, SeriesEvaluation,
    SeriesMethod,
};

/// Default number of terms.
pub const DEFAULT_TERMS: usize = 500;

/// Below this modulus `Method::Auto` uses the Maclaurin series.
pub const DEFAULT_AUTO_THRESHOLD: f64 = 4.0;

/// Evaluator choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Auto,
    Maclaurin,
    Asymptotic,
    Convergent,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Maclaurin => "maclaurin",
            Method::Asymptotic => "asymptotic",
            Method::Convergent => "convergent",
        })
    }
}

impl FromStr for Method {
    type Err = AiryError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Method::Auto),
            "maclaurin" => Ok(Method::Maclaurin),
            "asymptotic" => Ok(Method::Asymptotic),
            "convergent" => Ok(Method::Convergent),
            other => domain(format!("unknown method '{other}'")),
        }
    }
}

/// Argument and evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationRequest {
    pub z: Complex64,
    pub method: Method,
    /// Number of terms `N` for the Maclaurin and convergent series.
    pub terms: usize,
    /// Modulus at which `Method::Auto` switches to the convergent series.
    pub auto_threshold: f64,
}

impl EvaluationRequest {
    pub fn new(z: Complex64) -> Self {
        EvaluationRequest {
            z,
            method: Method::Auto,
            terms: DEFAULT_TERMS,
            auto_threshold: DEFAULT_AUTO_THRESHOLD,
        }
    }

    pub fn method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn terms(mut self, terms: usize) -> Self {
        self.terms = terms;
        self
    }

    pub fn auto_threshold(mut self, threshold: f64) -> Self {
        self.auto_threshold = threshold;
        self
    }

    fn validate(&self) -> Result<()> {
        if !self.z.re.is_finite() || !self.z.im.is_finite() {
            return Err(AiryError::NonFinite);
        }
        if self.terms < 1 {
            return domain("the number of terms must be at least 1");
        }
        Ok(())
    }

    fn at(&self, z: Complex64) -> Self {
        EvaluationRequest { z, ..*self }
    }
}

/// One summand `factor · Ai(argument)` of the computed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorTerm {
    pub factor: Complex64,
    pub argument: Complex64,
}

/// Value plus the record of how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult {
    pub value: Complex64,
    pub method_used: SeriesMethod,
    /// A single `(1, z)` term for direct evaluation, two after rotation.
    pub sector_terms: Vec<SectorTerm>,
    /// One entry per series evaluation, aligned with `sector_terms`.
    pub diagnostics: Vec<SeriesEvaluation>,
}

impl EvaluationResult {
    /// Sum of `|factor|·bound` over the sub-evaluations, when all have one.
    pub fn error_bound(&self) -> Option<f64> {
        self.sector_terms
            .iter()
            .zip(&self.diagnostics)
            .map(|(t, d)| d.error_bound.map(|b| t.factor.norm() * b))
            .sum()
    }

    /// Largest term count over the sub-evaluations.
    pub fn terms_used(&self) -> usize {
        self.diagnostics.iter().map(|d| d.terms_used).max().unwrap_or(0)
    }
}

fn rotation(sign: f64) -> Complex64 {
    Complex64::from_polar(1.0, sign * 2.0 * PI / 3.0)
}

/// The two terms of the rotation identity for `|arg z| > 2π/3`.
pub fn sector_reduce(z: Complex64) -> Result<[SectorTerm; 2]> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(AiryError::NonFinite);
    }
    let phi = PhaseDecomposition::new(z).phi;
    if in_sector(phi) {
        return Err(AiryError::Misuse { phi });
    }
    let terms = [1.0, -1.0].map(|s| SectorTerm {
        factor: -rotation(s),
        argument: rotation(s) * z,
    });
    for t in &terms {
        let p = PhaseDecomposition::new(t.argument).phi;
        if !in_sector(p) {
            return Err(AiryError::Sector { phi: p });
        }
    }
    Ok(terms)
}

fn direct(req: &EvaluationRequest, eval: SeriesEvaluation) -> EvaluationResult {
    EvaluationResult {
        value: eval.value,
        method_used: eval.method,
        sector_terms: vec![SectorTerm {
            factor: Complex64::new(1.0, 0.0),
            argument: req.z,
        }],
        diagnostics: vec![eval],
    }
}

fn convergent(req: &EvaluationRequest) -> Result<EvaluationResult> {
    let phi = PhaseDecomposition::new(req.z).phi;
    if in_sector(phi) {
        return Ok(direct(req, convergent_ai_sector(req.z, req.terms)?));
    }
    let terms = sector_reduce(req.z)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut diagnostics = Vec::with_capacity(2);
    for t in &terms {
        let e = convergent_ai_sector(t.argument, req.terms)?;
        value += t.factor * e.value;
        diagnostics.push(e);
    }
    Ok(EvaluationResult {
        value,
        method_used: SeriesMethod::Convergent,
        sector_terms: terms.to_vec(),
        diagnostics,
    })
}

/// `Ai(z)` by the requested method.
pub fn ai(req: &EvaluationRequest) -> Result<EvaluationResult> {
    req.validate()?;
    match req.method {
        Method::Maclaurin => Ok(direct(req, maclaurin_ai(req.z, req.terms))),
        Method::Asymptotic => Ok(direct(req, asymptotic_ai(req.z)?)),
        Method::Convergent => convergent(req),
        Method::Auto if req.z.norm() < req.auto_threshold => Ok(direct(req, maclaurin_ai(req.z, req.terms))),
        Method::Auto => convergent(req),
    }
}

/// `Bi(z)` from two evaluations of [`ai`] at rotated arguments.
pub fn bi(req: &EvaluationRequest) -> Result<EvaluationResult> {
    req.validate()?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut sector_terms = Vec::new();
    let mut diagnostics = Vec::new();
    let mut method_used = None;
    for s in [1.0, -1.0] {
        let outer = Complex64::from_polar(1.0, s * PI / 6.0);
        let r = ai(&req.at(rotation(s) * req.z))?;
        value += outer * r.value;
        method_used.get_or_insert(r.method_used);
        for (t, d) in r.sector_terms.into_iter().zip(r.diagnostics) {
            sector_terms.push(SectorTerm {
                factor: outer * t.factor,
                argument: t.argument,
            });
            diagnostics.push(d);
        }
    }
    Ok(EvaluationResult {
        value,
        method_used: method_used.unwrap_or(SeriesMethod::Maclaurin),
        sector_terms,
        diagnostics,
    })
}

/// `Ai(z)` with the default settings.
pub fn airy_ai(z: Complex64) -> Result<Complex64> {
    ai(&EvaluationRequest::new(z)).map(|r| r.value)
}

/// `Bi(z)` with the default settings.
pub fn airy_bi(z: Complex64) -> Result<Complex64> {
    bi(&EvaluationRequest::new(z)).map(|r| r.value)
}
