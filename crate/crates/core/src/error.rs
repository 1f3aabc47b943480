//! Domain errors with stable machine-readable codes.

use thiserror::Error;

/// Everything that can go wrong in the library. Each variant has a stable
/// short code, used by the CLI's machine-readable error reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("undefined gcd: both inputs are zero")]
    UndefinedGcd,

    #[error("the step h must be non-zero")]
    ZeroStep,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid initial data: {0}")]
    InvalidData(String),

    #[error("degenerate: the two boundary coefficients coincide identically")]
    DegenerateSl2,

    #[error("tuple is infertile in direction {direction}")]
    Infertile { direction: usize },

    #[error("maxDegree exceeded while exploring the population")]
    MaxDegreeExceeded,

    #[error("genericity retries exhausted while building the solution basis")]
    GenericityRetriesExhausted,

    #[error("space has a base point: all basis elements share a root")]
    BasePoint,

    #[error("frame extraction failed: sampled gcd is not consistent (raise samples)")]
    FrameSampling,

    #[error("flag incompatible with frame: a Wronskian division was not exact")]
    FlagFrameIncompatible,

    #[error("space is not h-selfdual")]
    NotSelfdual,

    #[error("dual space has a dimension defect")]
    DualDimensionDefect,

    #[error("Witt normalization failed")]
    WittNormalizationFailed,

    #[error("triple is not consistent with the rank-one symplectic relations")]
    NotC1Consistent,

    #[error("theorem hypotheses not met: {0}")]
    TheoremHypotheses(String),

    #[error("weight is not dominant integral")]
    NotDominant,

    #[error("C-type data requires an even degree in the last coordinate")]
    OddSymplecticDegree,

    #[error("only l=1 is supported exactly by the counting check")]
    UnsupportedCount,

    #[error("tuple fails the required precondition: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UndefinedGcd => "undefined-gcd",
            Error::ZeroStep => "zero-step",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::InvalidData(_) => "invalid-data",
            Error::DegenerateSl2 => "degenerate",
            Error::Infertile { .. } => "infertile",
            Error::MaxDegreeExceeded => "max-degree-exceeded",
            Error::GenericityRetriesExhausted => "genericity-exhausted",
            Error::BasePoint => "base-point",
            Error::FrameSampling => "frame-sampling",
            Error::FlagFrameIncompatible => "flag-frame-incompatible",
            Error::NotSelfdual => "not-selfdual",
            Error::DualDimensionDefect => "dual-dimension-defect",
            Error::WittNormalizationFailed => "witt-normalization-failed",
            Error::NotC1Consistent => "not-c1-consistent",
            Error::TheoremHypotheses(_) => "theorem-hypotheses",
            Error::NotDominant => "not-dominant",
            Error::OddSymplecticDegree => "odd-symplectic-degree",
            Error::UnsupportedCount => "unsupported-count",
            Error::Precondition(_) => "precondition",
        }
    }
}
