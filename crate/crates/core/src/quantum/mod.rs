//! Quantum D-torus algebras of seeds, their quantum mutation maps, and the
//! compact quantum dilogarithm as a formal series.

pub mod context;
pub mod mutation;
pub mod psi;
pub mod relation;
pub mod series;

pub use context::{Gen, TorusContext};
pub use mutation::{eval_monomial, mu_prime, mu_sharp, series_in, sharp_eval, SharpMode};
pub use psi::{psi_inverse_series, psi_series, verify_compact_identity, CompactIdentity};
pub use relation::{
    ratexpr_series, run_branch, verify_dual_quantum, verify_dual_relation, verify_quantum_relation, DualReport, GenVerdict,
    QuantumRelationReport,
};
pub use series::{qtorus_mul, QSeries};

use thiserror::Error;

use crate::exact::AlgebraError;
use crate::seed::SeedError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantumError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("series not invertible: lowest-degree part {0} is not a single monomial")]
    NotInvertible(String),
    #[error("truncation overflow: needed precision {requested}, reached {achieved}")]
    TruncationOverflow { requested: i64, achieved: i64 },
    #[error("torus context mismatch")]
    ContextMismatch,
}
