//! Exact rational functions of the dynamical coordinates `l1..lN` and the
//! step variable `g`.
//!
//! [`RatExpr`] keeps every value in a canonical reduced form, so equality of
//! rational functions is structural equality. Text input and output go
//! through [`parse_expr`] and [`format_expr`].

mod format;
mod gcd;
mod parse;
mod poly;
mod ratexpr;
mod sample;

pub use format::format_expr;
pub use gcd::gcd;
pub use parse::parse_expr;
pub use poly::{Monomial, MultiPoly, Rational, Var};
pub use ratexpr::RatExpr;
pub use sample::{cross_check_zero, PointSampler, MAX_RESAMPLES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("denominator vanishes identically at g = 0")]
    PoleAtGammaZero,
    #[error("evaluation point has {got} entries, needs at least {needed}")]
    PointArity { needed: usize, got: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad exponent at position {pos}: {msg}")]
    Exponent { pos: usize, msg: String },
    #[error("no pole-free evaluation point after {0} attempts")]
    ResampleLimit(usize),
}
