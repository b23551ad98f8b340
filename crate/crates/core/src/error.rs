use thiserror::Error;

/// Errors raised by factorisation, derivative and I/O routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QrError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("triangular factor has a (near-)zero diagonal entry {value:e} at index {index}")]
    SingularTriangular { index: usize, value: f64 },

    #[error("active subcolumn of Householder step {step} is identically zero")]
    RankDeficient { step: usize },

    #[error("tau({index}) is zero, so T is not invertible")]
    NonInvertibleT { index: usize },

    #[error("factorisation branch differs between the finite-difference evaluation points")]
    BranchChange,

    #[error("degenerate Householder step: {0}")]
    Degeneracy(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl QrError {
    /// Stable class name, written to stderr by the command-line front end.
    pub fn class_name(&self) -> &'static str {
        match self {
            QrError::Dimension(_) => "DimensionError",
            QrError::NonFinite { .. } => "NonFiniteError",
            QrError::SingularTriangular { .. } => "SingularTriangularError",
            QrError::RankDeficient { .. } => "RankDeficientError",
            QrError::NonInvertibleT { .. } => "NonInvertibleT",
            QrError::BranchChange => "BranchChangeError",
            QrError::Degeneracy(_) => "DegeneracyError",
            QrError::Config(_) => "ConfigError",
            QrError::Parse(_) => "ParseError",
        }
    }

    /// True for failures of a numeric precondition (as opposed to malformed input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            QrError::SingularTriangular { .. }
                | QrError::RankDeficient { .. }
                | QrError::NonInvertibleT { .. }
                | QrError::BranchChange
                | QrError::Degeneracy(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, QrError>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(QrError::Dimension(msg.into()))
}
