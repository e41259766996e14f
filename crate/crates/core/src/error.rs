use thiserror::Error;

use crate::numerics::QuadResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown defect family `{0}` (expected one of: phi4, chi4, sg)")]
    UnknownFamily(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bound level {0} is not available (expected 0 or 1)")]
    InvalidLevel(i64),

    #[error("y = {y} lies outside the box [-{half_width}, {half_width}]")]
    OutsideBox { y: f64, half_width: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "quadrature did not reach tolerance {tol:e}: value {value} with error estimate {:e} after {} evaluations",
        .best.error_estimate, .best.evaluations, value = .best.value
    )]
    QuadratureFailed { best: QuadResult, tol: f64 },

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of a numerical routine, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::QuadratureFailed { .. } | Error::Eigen(_))
    }
}
