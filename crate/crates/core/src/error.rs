use alloc::string::String;

use crate::path::MutationPath;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch in {context}")]
    Dimension { context: &'static str },

    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is not sign-skew-symmetric")]
    NotSignSkewSymmetric,

    #[error("exact division left a non-Laurent remainder")]
    NotLaurent,

    #[error("cluster variable {index} is not homogeneous under the principal grading")]
    Inhomogeneous { index: usize },

    #[error("operation requires principal coefficients")]
    UnsupportedCoefficients,

    #[error("sign of column {index} is undefined at path {path}")]
    SignUndefined { index: usize, path: MutationPath },

    #[error("row {index} has mixed signs at path {path}")]
    MixedRowSign { index: usize, path: MutationPath },

    #[error("matrix is singular")]
    Singular,

    #[error("zero denominator in rational function")]
    ZeroDenominator,

    #[error("exponent {0} does not fit the supported range")]
    ExponentOverflow(String),

    #[error("group closure exceeds {bound} elements")]
    GroupTooLarge { bound: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("quiver is not admissible for its group action")]
    NotAdmissible,

    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("variable sets differ")]
    VariableMismatch,
}
