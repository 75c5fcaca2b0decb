use thiserror::Error;

use superdyn::dynamical::DynError;
use superdyn::expr::ExprError;
use superdyn::graded::GradedError;
use superdyn::verify::VerifyError;

/// Errors are split by exit code: input problems exit 2, failed
/// verifications and unfinished computations exit 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("invalid document: {0}")]
    Document(String),
    #[error("invalid expression {text:?}: {source}")]
    Expression { text: String, source: ExprError },
    #[error(transparent)]
    Dyn(#[from] DynError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Dyn(DynError::QuantizationNotFound(_)) => 1,
            CliError::Verify(
                VerifyError::NotHecke(_)
                | VerifyError::NotQuasiconstant { .. }
                | VerifyError::AdditivityViolation { .. }
                | VerifyError::ClassificationFailed(_),
            ) => 1,
            _ => 2,
        }
    }
}
