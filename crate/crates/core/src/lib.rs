//! Exact construction and verification of super dynamical r- and R-matrices
//! of gl(m|n) type.
//!
//! * [`expr`]: exact rational functions in the dynamical coordinates and the step `g`.
//! * [`graded`]: graded spaces and sign-correct tensor algebra.
//! * [`dynamical`]: zero-weight operators, constructors, gauges and quantization.
//! * [`verify`]: Yang-Baxter, unitarity, Hecke and classification checks.

pub mod dynamical;
pub mod expr;
pub mod graded;
pub mod verify;
