//! Zero-weight r- and R-matrices of gl(m|n) type: constructors, gauge
//! transformations, multiplicative forms and quantization.

mod constructors;
mod forms;
mod gauge;
mod partition;
mod pipeline;
mod semiclassical;
mod zero_weight;

pub use constructors::{r_canonical, r_prime_rat, r_rat, r_rat_gamma, r_rat_gamma_shifted, r_x, r_x_with_step};
pub use forms::{delta_i, phi_from_hecke, quantize_closed_2form, verify_quantization, MultForm};
pub use gauge::{check_permutation, gauge_classical, gauge_quantum, permuted_space, ClassicalGauge, QuantumGauge};
pub use partition::IntervalPartition;
pub use pipeline::{decompose_canonical, quantize_pipeline, PipelineReport};
pub use semiclassical::{expand_gamma, semiclassical_limit};
pub use zero_weight::{QuasiConstant, SignTable, TwoForm, ZeroWeightOp};

use thiserror::Error;

use crate::expr::ExprError;
use crate::graded::GradedError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("invalid interval partition: {0}")]
    BadPartition(String),
    #[error("invalid form: {0}")]
    BadForm(String),
    #[error("2-form is not closed: cyclic sum at ({0},{1},{2}) is nonzero")]
    NotClosed(usize, usize, usize),
    #[error("multiplicative form is not γ-closed: {0}")]
    NotGammaClosed(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("function must be nonzero")]
    ZeroFunction,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live on different graded spaces")]
    SpaceMismatch,
    #[error("{0:?} is not a permutation")]
    BadPermutation(Vec<usize>),
    #[error("mu_{0} depends on a coordinate")]
    NotQuasiconstant(usize),
    #[error("no verified quantization: {0}")]
    QuantizationNotFound(String),
    #[error("order-0 coefficient at g = 0 is not the identity")]
    NotUnitalAtGammaZero,
    #[error("operator is not zero weight: entry at row {row:?}, column {col:?}")]
    NotZeroWeight { row: Vec<usize>, col: Vec<usize> },
    #[error("operator is not of the canonical classical form: {0}")]
    NotCanonical(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}
