//! Reference oracle, accuracy studies and CSV writers for `airy-core`.

pub mod grid;
pub mod oracle;
pub mod quadrature;

use airy_core::AiryError;
use thiserror::Error;

pub use grid::{
    accuracy_grid, convergence_profile, error_bound_map, AccuracyRecord, BoundRow, GridSpec, ProfileRow,
};
pub use oracle::{oracle_ai, oracle_bi, BigComplex, OracleConfig, OracleError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Airy(#[from] AiryError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl BenchError {
    /// Process exit code: 2 usage, 3 numeric domain, 4 convergence failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) => 2,
            BenchError::Airy(AiryError::Convergence { .. }) => 4,
            BenchError::Airy(_) | BenchError::Oracle(_) => 3,
        }
    }
}
