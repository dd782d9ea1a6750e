//! Exact arithmetic in cyclotomic fields `Q(ζ_N)` and dense matrices over them.

mod complex;
mod matrix;
pub mod poly;
mod root;
mod scalar;
mod text;

pub use complex::{to_c64, to_complex, ComplexDecimal, MAX_DIGITS};
pub use matrix::CycMatrix;
pub use poly::MAX_CONDUCTOR;
pub use root::{root_of_unity_order, RootOfUnity};
pub use scalar::CycScalar;
pub use text::{parse_scalar, ScalarSyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("invalid conductor {0} (must be between 1 and {MAX_CONDUCTOR})")]
    InvalidConductor(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("precision of {0} digits is outside 1..={MAX_DIGITS}")]
    PrecisionOutOfRange(u32),
}
