//! Exact arithmetic: rationals, rational functions in a root of `q`,
//! rational functions in commuting variables, small matrices.

pub mod matrix;
pub mod mpoly;
pub mod qcoeff;
pub mod ratexpr;
pub mod rational;
pub mod upoly;

pub use matrix::{IntMatrix, RatMatrix};
pub use mpoly::{MPoly, Mono};
pub use qcoeff::{qcoeff_arith, QCoeff, QContext, QOp};
pub use ratexpr::{ratexpr_simplify, var_set, RatExpr};
pub use rational::{int, rat, Rational};
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient context mismatch: {0}")]
    ContextMismatch(String),
    #[error("not representable in this context: {0}")]
    NotRepresentable(String),
}
