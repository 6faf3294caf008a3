use thiserror::Error;

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("image list {0:?} is not a permutation")]
    NotAPermutation(Vec<u32>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group too large: closure exceeded cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("element {0} does not belong to the group")]
    NotAnElement(String),
    #[error("subgroup is not normal: conjugate {conjugate} of {element} by {by} lies outside")]
    NotNormal {
        element: String,
        by: String,
        conjugate: String,
    },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("search cap of {cap} exceeded ({what})")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("enumeration overflow: {live} live cosets reached limit {limit}; retry with a larger limit")]
    EnumerationOverflow { live: usize, limit: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("catalog entry {entry}: {message}")]
    Catalog { entry: String, message: String },
    #[error("{0}")]
    Invalid(String),
}
