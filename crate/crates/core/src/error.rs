use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("basic set needs at least 2 variables, got {0}")]
    BasicSetTooSmall(usize),

    #[error("basic set has {0} variables; at most {max} are supported here", max = crate::basic_set::MAX_VARIABLES)]
    BasicSetTooLarge(usize),

    #[error("duplicate variable label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("subset mask {mask:#x} is out of range for a basic set of size {size}")]
    MaskOutOfRange { mask: u32, size: usize },

    #[error("arguments must be pairwise disjoint")]
    NotDisjoint,

    #[error("mask form must be in 1..=5, got {0}")]
    MaskFormOutOfRange(u8),

    #[error("basic sets do not match: {0}")]
    BaseMismatch(String),

    #[error("set function is not a polymatroid: {0}")]
    NotPolymatroid(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distributions are not consonant: {0}")]
    NotConsonant(String),

    #[error("conditional product needs non-empty outer components")]
    EmptyComponent,

    #[error("dominance violated at configuration {config:?}: r = 0 but q > 0")]
    DominanceViolation { config: Vec<usize> },

    #[error("premises violated: {0}")]
    PremisesViolated(String),

    #[error("unsupported basic set size {0} for this rule set (four variables required)")]
    UnsupportedBaseSize(usize),

    #[error("malformed derivation schema: {0}")]
    MalformedSchema(String),

    #[error("unknown catalog id `{0}`")]
    UnknownCatalogId(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
