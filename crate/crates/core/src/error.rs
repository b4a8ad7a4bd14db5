//! Error type shared by every module.

use thiserror::Error;

/// Failures raised by the library.
///
/// Input errors map to CLI exit code 2, everything else to 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible offsets: {0}")]
    IncompatibleOffset(String),
    #[error("coefficient out of range: {0}")]
    OutOfRange(String),
    #[error("series is not a unit: leading coefficient is zero")]
    NotAUnit,
    #[error("branch ambiguity: rational power of a series with leading coefficient {0}")]
    BranchAmbiguity(String),
    #[error("divergent composition: inner series must have integer valuation >= 1")]
    DivergentComposition,
    #[error("resonance at order {order}, entry ({i},{j})")]
    Resonance { order: usize, i: usize, j: usize },
    #[error("under-determined recursion at order {order}, entry ({i},{j})")]
    UnderDetermined { order: usize, i: usize, j: usize },
    #[error("not elliptic: {0}")]
    NotElliptic(String),
    #[error("weight-shift degeneracy: {0}")]
    ShiftDegeneracy(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("not a member of the module: {0}")]
    NotAMember(String),
    #[error("exponent not tight: {0}")]
    NotTight(String),
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    #[error("singular matrix")]
    Singular,
    #[error("structural failure: {0}")]
    Structural(String),
}

impl Error {
    /// True for errors caused by malformed user input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::DimensionMismatch(_) | Error::ExcludedParameter(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
