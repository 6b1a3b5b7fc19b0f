use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants that describe a violated precondition carry a short explanation
/// of which value failed; `Internal` marks a broken invariant and should never
/// surface from correct inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("wrong field: {0}")]
    WrongField(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),

    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("vector is not orthogonal to the subalgebra: {0}")]
    NotOrthogonal(String),
    #[error("doubling element has zero norm")]
    IsotropicDoubler,
    #[error("not a composition subalgebra: {0}")]
    NotCompositionSubalgebra(String),
    #[error("doubling parameter is zero")]
    ZeroParameter,
    #[error("unsupported characteristic/parameter combination: {0}")]
    UnsupportedCharCombination(String),
    #[error("not a proper idempotent: {0}")]
    NotProperIdempotent(String),
    #[error("field too large for exhaustive checking: {0}")]
    TooLargeForExhaustive(String),

    #[error("reflection mirror has zero norm")]
    IsotropicMirror,
    #[error("not an isometry: {0}")]
    NotIsometric(String),
    #[error("isometry extension search failed: {0}")]
    ExtensionSearchFailed(String),
    #[error("sampler exhausted after {0} retries")]
    SamplerExhausted(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("canonical basis completion failed: {0}")]
    CanonicalCompletionFailed(String),
    #[error("norm mismatch: {0}")]
    NormMismatch(String),
    #[error("algebra is not division-certified")]
    NotDivision,
    #[error("map is not a local automorphism: {0}")]
    NotLocalAutomorphism(String),
    #[error("algebra is not split-certified")]
    NotSplit,
    #[error("normalized map does not preserve the Peirce components: {0}")]
    PeirceNotPreserved(String),
    #[error("sample points do not span the algebra (rank {0})")]
    UnderdeterminedSpan(usize),
    #[error("group closure exceeded cap {0}")]
    CapExceeded(usize),
    #[error("map does not fix 1 or is not an isometry: {0}")]
    NotStabilizer(String),
    #[error("map is not orthogonal on the trace-zero space: {0}")]
    NotOrthogonalOnC0(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
