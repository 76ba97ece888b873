use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} outside the range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("resolution too short: index {needed} requires length {}, limit is {limit}", needed + 1)]
    ResolutionTooShort { needed: usize, limit: usize },
    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("alternative generators do not generate the ideal")]
    GeneratorMismatch,
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("lifting equation has no solution at degree {0}")]
    LiftingFailure(usize),
    #[error("characteristic sequence failed validation")]
    UnvalidatedSequence,
    #[error("ring is not finite-dimensional over its field")]
    NotFiniteDimensional,
    #[error("tower direction mismatch: expected {0}")]
    DirectionMismatch(&'static str),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{name}` is a {found}, expected {expected}")]
    KindMismatch { name: String, expected: &'static str, found: &'static str },
    #[error("name `{0}` already declared")]
    Duplicate(String),
}

impl Error {
    /// Stable machine-readable code for JSON output and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch => "ring-mismatch",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::ResolutionTooShort { .. } => "resolution-too-short",
            Error::NotAComplex(_) => "not-a-complex",
            Error::Shape(_) => "shape-mismatch",
            Error::GeneratorMismatch => "generator-mismatch",
            Error::CertificateMismatch(_) => "certificate-mismatch",
            Error::LiftingFailure(_) => "lifting-failure",
            Error::UnvalidatedSequence => "unvalidated-sequence",
            Error::NotFiniteDimensional => "not-finite-dimensional",
            Error::DirectionMismatch(_) => "direction-mismatch",
            Error::Parse { .. } => "parse-error",
            Error::UnknownName(_) => "unknown-name",
            Error::KindMismatch { .. } => "kind-mismatch",
            Error::Duplicate(_) => "duplicate-name",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownName(_) | Error::KindMismatch { .. } | Error::Duplicate(_)
        )
    }
}
