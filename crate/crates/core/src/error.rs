//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("group of order {order} is too large to enumerate (bound {bound})")]
    TooLargeToEnumerate { order: u128, bound: u64 },

    #[error("element {0} is not in the parent group")]
    NotInParent(String),

    #[error("subgroup handles have different parent groups")]
    ParentMismatch,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u128 },

    #[error("subgroup is not normal: conjugate of {0} escapes the subgroup")]
    NotNormal(String),

    #[error("quotient is not abelian: commutator {0} lies outside the kernel")]
    QuotientNotAbelian(String),

    #[error("subgroup of order {order} exceeds the subgroup-enumeration bound {bound}")]
    SubgroupTooLarge { order: u64, bound: u64 },

    #[error("too many subgroups: more than {bound}")]
    TooManySubgroups { bound: usize },

    #[error("expected a p-group, got a group of order {0}")]
    NotPGroup(u64),

    #[error("Sylow {p}-subgroup is not cyclic (order {order})")]
    SylowNotCyclic { p: u64, order: u64 },

    #[error("Sylow {0}-subgroup is not abelian")]
    SylowNotAbelian(u64),

    #[error("trivial subgroup not allowed here")]
    TrivialSubgroup,

    #[error("table has no value for element {0}")]
    PartialTable(String),

    #[error("table is not a homomorphism: fails at ({0}, {1})")]
    NotHomomorphism(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypotheses unverified: {0}")]
    HypothesesUnverified(String),

    #[error("no cube root of unity in GF({0})")]
    NoCubeRoot(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
