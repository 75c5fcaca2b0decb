//! Command-line front end for `superdyn`: JSON documents for operators and
//! reports, and the `construct`, `verify`, `gauge`, `expand`, `quantize`
//! and `classify` commands.

pub mod cli;
pub mod document;
mod error;
pub mod report;

pub use error::CliError;
