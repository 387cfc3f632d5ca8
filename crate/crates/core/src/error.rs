//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max asymmetry {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension must be at least 2, got {d}")]
    DimensionTooSmall { d: usize },

    #[error("spin must be a positive half-integer, got {j}")]
    InvalidSpin { j: f64 },

    #[error("wrong generator kind: expected {expected}, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invalid channel spec: {reason}")]
    InvalidSpec { reason: String },

    #[error("operation not supported for family {family}")]
    UnsupportedFamily { family: &'static str },

    #[error("dimension {d} is odd; the pair partitions require an even dimension")]
    OddDimension { d: usize },

    #[error("empty Kraus set")]
    EmptyKrausSet,

    #[error("not a probability vector: {reason}")]
    NotAProbabilityVector { reason: String },

    #[error("no sign change on [{lo:.3e}, {hi:.3e}]: f(lo)={f_lo:.6e}, f(hi)={f_hi:.6e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
