//! Graded vector spaces and sign-correct tensor algebra on `V^{⊗k}`.
//!
//! Operators act on tensors by the Koszul rule
//! `(a ⊗ b)(v ⊗ w) = (−1)^{|b||v|} av ⊗ bw`.

mod components;
mod homop;
mod space;

pub use components::{alt_s_by_definition, alt_s_of_dr, place_13_by_components, place_in_slots, place_operator, Hom2Components, Summand};
pub use homop::HomOp;
pub use space::GradedSpace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("a graded space needs at least one basis vector")]
    EmptySpace,
    #[error("parity must be 0 or 1, got {0}")]
    BadParity(u8),
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operators live on different graded spaces")]
    SpaceMismatch,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("unsupported arity {0}; operators have arity 1, 2 or 3")]
    BadArity(usize),
    #[error("invalid slot pair ({0},{1})")]
    InvalidSlots(usize, usize),
    #[error("factor is not homogeneous")]
    Inhomogeneous,
}
