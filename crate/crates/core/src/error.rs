use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word token `{0}`")]
    BadToken(String),
    #[error("generator id {0} is out of range for this presentation")]
    GeneratorOutOfRange(u16),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("search budget must be positive")]
    NonPositiveBudget,
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("class {0} is not two-sided and nonzero")]
    NotTwoSided(String),
    #[error("class has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no matrix assigned to generator `{0}`")]
    UncoveredGenerator(String),
    #[error("chain of length {k} does not fit in genus {g}")]
    ChainTooLong { g: usize, k: usize },
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("{0}")]
    OutOfRange(String),
    #[error("coset table exceeded {0} cosets")]
    CosetOverflow(usize),
    #[error("word is not in the canonical form C^n (A1 B)^(3m) within |n|,|m| <= {0}")]
    NotInCanonicalForm(i64),
    #[error("endomorphism is not certified: {0}")]
    NotCertified(String),
    #[error("representation check failed: {0}")]
    RepresentationInvalid(String),
}
