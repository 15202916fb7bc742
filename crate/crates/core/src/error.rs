use thiserror::Error;

/// Errors raised by the `permdesign` library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("entry {value} out of range [1..{n}]")]
    OutOfRange { value: i64, n: usize },

    #[error("duplicate image {value}")]
    DuplicateImage { value: usize },

    #[error("invalid token {token:?}")]
    InvalidToken { token: String },

    #[error("invalid rational {text:?}")]
    InvalidRational { text: String },

    #[error("index {index} out of range [0..{max}]")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("field order {q} exceeds cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("permutation set must be nonempty")]
    EmptySet,

    #[error("duplicate permutation {perm}")]
    DuplicatePermutation { perm: String },

    #[error("not a Latin square: {reason}")]
    NotLatinSquare { reason: String },

    #[error("set is not a group")]
    NotAGroup,

    #[error("group closure exceeded {cap} elements")]
    ClosureTooLarge { cap: usize },

    #[error("strength t={t} out of range for degree n={n}: {reason}")]
    StrengthOutOfRange {
        n: usize,
        t: usize,
        reason: &'static str,
    },

    #[error("singular linear system")]
    SingularSystem,

    #[error("criteria disagree: {detail}")]
    CriteriaDisagree { detail: String },

    #[error("search parameters unsupported: {reason}")]
    UnsupportedSearch { reason: String },

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("missing header line `n=<degree>`")]
    MissingHeader,

    #[error("invalid header {text:?}")]
    InvalidHeader { text: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
