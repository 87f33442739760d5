use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra dimension m = {0}: m must be odd and at least 3")]
    InvalidSignature(u32),

    #[error("blade e{{{blade}}} uses a generator outside 1..={m}")]
    BladeOutOfRange { blade: String, m: u32 },

    #[error("signature mismatch: m = {left} vs m = {right}")]
    SignatureMismatch { left: u32, right: u32 },

    #[error("variable index {index} out of range 0..={m}")]
    VariableOutOfRange { index: usize, m: u32 },

    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },

    #[error("element is not an imaginary unit (need t(J) = 0 and n(J) = 1)")]
    NotImaginaryUnit,

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("negative power of beta survived with a nonzero coefficient: {0}")]
    ResidualNegativePower(String),

    #[error("coefficient index l = {ell} out of range 1..={k}")]
    CoefficientIndex { k: u32, ell: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("reconstruction input does not satisfy the harmonicity system")]
    NotHarmonic,

    #[error("c_{ell} has degree {degree}, exceeding the bound {bound}")]
    DegreeBound {
        ell: usize,
        degree: usize,
        bound: usize,
    },

    #[error("c_{ell} is inconsistent with the values read off c_0")]
    InconsistentReconstruction { ell: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
