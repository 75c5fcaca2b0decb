//! Exact checks: zero weight, classical and quantum dynamical Yang–Baxter
//! equations, unitarity, Hecke conditions and classification of Hecke-type
//! solutions.

mod classical;
mod classify;
mod coeff;
mod hecke;
mod qdybe;
mod residual;

pub use classical::{cdybe_operator, cdybe_residual, check_zero_weight, commutator_check, structural_check, unitarity_residual};
pub use classify::{classify_hecke_r, ClassificationResult};
pub use coeff::{coefficient_equation_suite, COEFFICIENT_EQUATIONS};
pub use hecke::{beta_recursion_check, hecke_check, r_check, HeckeMode, HeckeParams};
pub use qdybe::{qdybe_difference, qdybe_residual, qdybe_residual_at_point, qdybe_residual_sampled};
pub use residual::{CheckKind, Failure, Residual};

use thiserror::Error;

use crate::dynamical::DynError;
use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("only epsilon = 0 is supported for unitarity")]
    UnsupportedEpsilon,
    #[error("coefficient equations need alpha_{0}{0} = 1")]
    AlphaDiagNotOne(usize),
    #[error("Hecke parameters must satisfy p + q != 0")]
    ParameterConflict,
    #[error("not of strong Hecke type with p = q = 1: {0}")]
    NotHecke(String),
    #[error("mu_{i}{j} depends on a coordinate")]
    NotQuasiconstant { i: usize, j: usize },
    #[error("mu_{i}{k} != mu_{i}{j} + mu_{j}{k}")]
    AdditivityViolation { i: usize, j: usize, k: usize },
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}
