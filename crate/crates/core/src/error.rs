use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for Dynkin type {kind}")]
    InvalidRank { kind: char, rank: usize },

    #[error("cannot parse configuration name {0:?}")]
    InvalidConfigurationName(String),

    #[error("unsupported canonical index {0}")]
    UnsupportedIndex(u32),

    #[error("labeling does not match configuration: {0}")]
    LabelingMismatch(String),

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("cyclotomic order {0} is not in the supported menu {{2, 3, 4, 6, 12}}")]
    UnsupportedOrder(u32),

    #[error("cannot promote order {from} to order {to}")]
    IncompatibleOrders { from: u32, to: u32 },

    #[error("degenerate local type diag(z^{a}, z^{b}) for order {order}")]
    DegenerateLocalType { order: u32, a: u32, b: u32 },

    #[error("local type exponents ({a}, {b}) must sum to 1 mod {order}")]
    InvalidLocalType { order: u32, a: u32, b: u32 },

    #[error("eigenvalue profile is invalid: {0}")]
    InvalidProfile(String),

    #[error("Picard budget violated: N = {fixed_curves} gives t = {t}")]
    BudgetViolation { fixed_curves: i64, t: i64 },

    #[error("no count identity for index {0}")]
    NoCountIdentity(u32),

    #[error("no host graph for surface {surface} with index {index}")]
    UnsupportedCombination { surface: String, index: u32 },

    #[error("unknown curve name {0:?}")]
    UnknownCurveName(String),

    #[error("golden file missing: {0}")]
    GoldenFileMissing(String),

    #[error("golden file malformed: {0}")]
    GoldenFileMalformed(String),
}
