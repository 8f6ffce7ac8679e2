use thiserror::Error;

use crate::generic::Diagnostic;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid abelian model: {0}")]
    InvalidModel(String),

    #[error("labels belong to different models ({left} vs {right})")]
    ModelMismatch { left: &'static str, right: &'static str },

    #[error("operation `{op}` is not supported in the {model} model")]
    Unsupported { op: &'static str, model: &'static str },

    #[error("twist character must have degree 1, got degree {0}")]
    InvalidTwist(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("relation set rejected: {}", format_diagnostics(.0))]
    Relations(Vec<Diagnostic>),

    #[error("cyclotomic value is not a rational integer (residual mod Phi_{order}: {residual:?})")]
    NotAnInteger { order: usize, residual: Vec<i64> },

    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// True for errors caused by a mathematical precondition of the input
    /// data (as opposed to malformed models or internal failures).
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::Relations(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
