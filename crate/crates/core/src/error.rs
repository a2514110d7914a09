use thiserror::Error;

/// Errors raised across the library. Variants are grouped loosely by the
/// subsystem that produces them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // polynomial construction and root finding
    #[error("root tuple is empty")]
    EmptyTuple,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("degree {degree} is too small (need at least {required})")]
    DegreeTooSmall { degree: usize, required: usize },
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("polynomial is not real-rooted: {0}")]
    NotRealRooted(String),
    #[error("perturbation size must be positive")]
    NonPositiveEps,

    // spectral order
    #[error("tuple lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("scalar modes differ")]
    ModeMismatch,
    #[error("first tuple is not majorized by the second")]
    NotMajorized,
    #[error("operation requires rational mode")]
    FloatModeUnsupported,
    #[error("domain violation: {0}")]
    DomainViolation(String),

    // contractions
    #[error("invalid contraction indices ({k}, {l}) for degree {n}")]
    InvalidIndices { k: usize, l: usize, n: usize },
    #[error("contraction coefficient exceeds half the gap")]
    CoefficientTooLarge,
    #[error("contraction coefficient must be positive")]
    NonPositiveCoefficient,
    #[error("contracted roots are equal")]
    EqualRoots,
    #[error("degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("transfer precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("transfer size is not below half the gap")]
    SigmaTooLarge,
    #[error("polynomial is not strictly hyperbolic; perturb it first (strict_perturb)")]
    NotStrict,
    #[error("polynomials are identical")]
    NotDistinct,
    #[error("chain would need {needed} steps, cap is {cap}")]
    ChainTooLong { needed: u128, cap: usize },
    #[error("chain replay mismatch: {0}")]
    ReplayMismatch(String),

    // operators
    #[error("top multiplier term is zero")]
    ZeroTopTerm,
    #[error("Maclaurin prefix too short: have {have} terms, need {need}")]
    PrefixTooShort { have: usize, need: usize },
    #[error("invalid operator parameters: {0}")]
    InvalidOperator(String),

    // harness and io
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("generator exhausted: {0}")]
    GeneratorExhausted(String),
    #[error("infeasible gap: {0}")]
    InfeasibleGap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
