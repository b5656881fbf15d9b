use thiserror::Error;

/// Errors produced by the geometry kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),
    #[error("invalid direction: zero vector")]
    InvalidDirection,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("edge with normal angle {angle} rad does not match any normal of the regular {mu}-gon")]
    NotAMuPolygon { mu: usize, angle: f64 },
    #[error("edge vector does not close: residual {residual}")]
    NotClosed { residual: f64 },
    #[error("numerical failure in LP solver: {0}")]
    NumericalFailure(String),
    #[error("orientation certification is only available in the plane")]
    UnsupportedCertification,
    #[error("malformed shape document at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
