use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("group is not transitive on {degree} points ({orbits} orbits)")]
    NotTransitive { degree: usize, orbits: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("minimal block needs two distinct points, got {0} twice")]
    SamePoint(usize),

    #[error("cycle length {k} out of range 2..={degree}")]
    CycleLengthOutOfRange { k: usize, degree: usize },

    #[error("set family is empty")]
    EmptyFamily,

    #[error("duplicate ground element `{0}`")]
    DuplicateElement(String),

    #[error("duplicate set {0}")]
    DuplicateSet(String),

    #[error("set {set} mentions `{element}`, which is not in the ground set")]
    UnknownElement { set: String, element: String },

    #[error("ground set has {0} elements; at most 64 are supported")]
    GroundTooLarge(usize),

    #[error("family has {0} sets; at most 2^20 are supported")]
    FamilyTooLarge(usize),

    #[error("ground sets overlap on `{0}`")]
    OverlappingGrounds(String),

    #[error("factor family must have at least two sets, got {0}")]
    FactorTooSmall(usize),

    #[error("block system violates the block law under {0}")]
    BlockLawViolated(String),

    #[error("malformed block system: {0}")]
    MalformedBlockSystem(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("poset covers contain a cycle through `{0}`")]
    PosetCycle(String),

    #[error("cover relation mentions unknown element `{0}`")]
    UnknownLabel(String),

    #[error("ground size {0} is infeasible for this enumeration mode")]
    Infeasible(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
