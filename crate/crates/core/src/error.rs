use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not unitary: residual {residual:e} exceeds {tolerance:e}")]
    NotUnitary { residual: f64, tolerance: f64 },

    #[error("matrix is not symmetric: asymmetry {asymmetry:e} exceeds {tolerance:e}")]
    NotSymmetric { asymmetry: f64, tolerance: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitRange { n: usize, min: usize, max: usize },

    #[error("eigenvalue pairing failed: {0}")]
    Pairing(String),

    #[error("structure check failed for {what}: residual {residual:e} exceeds {tolerance:e}")]
    Structure {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("no admissible square-root branch gives a real orthogonal factor (best imaginary norm {best_imag:e})")]
    Branch { best_imag: f64 },

    #[error("Kronecker factorization residual {residual:e} exceeds {tolerance:e}")]
    Kronecker { residual: f64, tolerance: f64 },

    #[error("{stage}: reconstruction residual {residual:e} exceeds {tolerance:e}")]
    Reconstruction {
        stage: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("eigendecomposition residual {residual:e} exceeds {tolerance:e}")]
    Eigen { residual: f64, tolerance: f64 },

    #[error("expected {expected} rotation angles for {controls} controls, found {found}")]
    AngleCount {
        controls: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("parse error: {0}")]
    Parse(String),
}
