use thiserror::Error;

/// Errors raised by the evaluators and kernels in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AiryError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence in {what} after {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    #[error("argument phase {phi} lies outside |arg z| <= 2pi/3; reduce it first")]
    Sector { phi: f64 },

    #[error("sector reduction misused: |arg z| = {phi} is already inside the convergent sector")]
    Misuse { phi: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("non-finite input")]
    NonFinite,

    #[error("exact arithmetic exceeded the digit budget ({bits} bits > {budget})")]
    Resource { bits: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, AiryError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(AiryError::Domain(msg.into()))
}
