//! Airy functions `Ai(z)` and `Bi(z)` of complex argument.
//!
//! Three evaluators are provided: the Maclaurin series, the classical
//! asymptotic expansion with optimal truncation, and a convergent expansion
//! whose terms carry incomplete gamma functions. [`api::ai`] and [`api::bi`]
//! pick between them and handle the rotation identities needed outside
//! `|arg z| ≤ 2π/3`.

pub mod api;
pub mod coeffs;
mod dd;
pub mod error;
pub mod gamma;
pub mod geometry;
pub mod logscaled;
pub mod series;

pub use api::{ai, airy_ai, airy_bi, bi, sector_reduce, EvaluationRequest, EvaluationResult, Method, SectorTerm};
pub use error::{AiryError, Result};
pub use logscaled::{LogPolar, LogScaled};
pub use series::{SeriesEvaluation, SeriesMethod};
