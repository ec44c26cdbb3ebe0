use alloc::string::String;

/// Errors reported by the exact geometry kernel, the hull engine, the
/// generators and the oracle.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("halfspace normal is the zero vector")]
    ZeroNormal,
    #[error("points are affinely dependent")]
    Degenerate,
    #[error("reference point lies on the hyperplane")]
    OrientationUndefined,
    #[error("point is not strictly interior (facet {facet} evaluates to {value})")]
    NotInterior { facet: usize, value: String },
    #[error("input is not full-dimensional (dimension {dim} in ambient {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("empty point set")]
    Empty,
    #[error("point lies outside the hull; witness facet {witness}")]
    OutsideHull { witness: crate::geometry::Halfspace },
    #[error("invalid generator parameters: {0}")]
    InvalidParameter(String),
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
