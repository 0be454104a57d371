use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty structure")]
    EmptyStructure,

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("unknown point identifier `{0}`")]
    UnknownPoint(String),

    #[error("unknown line identifier `{0}`")]
    UnknownLine(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group order {order} exceeds the size guard {limit}")]
    GroupTooLarge { order: u128, limit: u64 },

    #[error("groups do not match: {0}")]
    ParentMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("thin family: {0} members, at least 3 required")]
    ThinFamily(usize),

    #[error("Kantor family fails verification: {0}")]
    KantorViolation(String),

    #[error("not a generalized polygon: {0}")]
    NotAPolygon(String),

    #[error("invalid translation quadrangle: {0}")]
    InvalidTgq(String),

    #[error("{0}")]
    Degenerate(String),

    #[error("endomorphism is not in the kernel: {0}")]
    NotInKernel(String),

    #[error("enumeration required: {0}")]
    EnumerationRequired(String),

    #[error("search guard exceeded: {what} is {size}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("containment violation: {0}")]
    NotContained(String),

    #[error("invalid line sequence: {0}")]
    InvalidSequence(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
