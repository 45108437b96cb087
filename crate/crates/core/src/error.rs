use thiserror::Error;

use crate::quaternion::Quaternion;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero quaternion")]
    ZeroDivision,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular (sdet = {sdet:e})")]
    Singular { sdet: f64 },

    #[error("expression is singular at lambda = {0}")]
    SingularAt(Quaternion),

    #[error("matrix argument makes an inverted subexpression singular")]
    SingularMatrixAt,

    #[error("entry {0} must be nonzero")]
    RequiresNonzeroEntry(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("root finder did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("search found no certified root: {0}")]
    SearchIncomplete(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short machine-readable code used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDivision => "zero_division",
            Error::Parse { .. } => "parse",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Singular { .. } => "singular",
            Error::SingularAt(_) => "singular_at",
            Error::SingularMatrixAt => "singular_matrix_at",
            Error::RequiresNonzeroEntry(_) => "requires_nonzero_entry",
            Error::Unsupported(_) => "unsupported",
            Error::NumericalInstability(_) => "numerical_instability",
            Error::ConvergenceFailure(_) => "convergence_failure",
            Error::SearchIncomplete(_) => "search_incomplete",
            Error::Invalid(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
