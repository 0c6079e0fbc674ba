use thiserror::Error;

/// Errors raised by group, character and table computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("group of order {order} exceeds the enumeration cap of {cap} elements")]
    CapExceeded { order: String, cap: usize },
    #[error("element {0} is not a member of the group")]
    NotMember(String),
    #[error("group has {classes} conjugacy classes, above the limit of {limit}")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("no prime p = 1 mod {exponent} with {lower} < p <= {upper}")]
    NoSuitablePrime {
        exponent: u64,
        lower: u64,
        upper: u64,
    },
    #[error("eigenspace splitting failed: {0}")]
    SplitFailure(String),
    #[error("character table integrity violated: {0}")]
    Integrity(String),
    #[error("value is not rational")]
    NotRational,
    #[error("{k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: u64, conductor: u32 },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("automorphism does not normalize the group")]
    NotNormalizing,
    #[error("class fusion inconsistent: {0}")]
    Fusion(String),
    #[error("group is not non-abelian simple: {0}")]
    NotSimple(String),
    #[error("lie table data: {0}")]
    TableData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
