use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty support")]
    EmptySupport,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("degenerate segment")]
    DegenerateSegment,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field F_{p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u64, k: u64 },
    #[error("cannot embed F_{p}^{from} into F_{p}^{to}")]
    IncompatibleFields { p: u64, from: u32, to: u32 },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("no primitive root in characteristic {p} of order {d}")]
    NoPrimitiveRoot { p: u64, d: u64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not a valid splitting: {0}")]
    InvalidSplitting(String),
    #[error("summands do not add up to the polytope")]
    NotASummand,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no root within extension degree {max_ext}; need a larger extension")]
    RootsNotFound { max_ext: u32 },
    #[error("characteristic {0} not covered by the certificate")]
    CharacteristicNotCovered(u64),
    #[error("verdict is never good; nothing to factor")]
    NeverGood,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("map is not injective: {0} and {1} collide")]
    NotInjective(String, String),
    #[error("arithmetic overflow in exact linear programming")]
    LpOverflow,
    #[error("invalid input at {path}: {msg}")]
    Input { path: String, msg: String },
}

impl Error {
    pub fn input(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Input {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }
}
