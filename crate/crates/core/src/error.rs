use thiserror::Error;

use crate::group::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed {what} literal `{input}`")]
    Parse { what: &'static str, input: String },

    #[error("element {element} does not conform to group {group}")]
    ShapeMismatch { group: String, element: String },

    #[error("group {0} is infinite")]
    InfiniteGroup(String),

    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("table has no value at {0}")]
    MissingValue(GroupElement),

    #[error("invalid Witt function: {0}")]
    InvalidFunction(String),

    #[error("f is identically zero: V(f) is abelian and outside the classified cases")]
    AbelianCase,

    #[error("operation requires case {expected}, found {found}")]
    WrongCase { expected: &'static str, found: String },

    #[error("map has no coefficient of degree {degree} at {at}")]
    DomainMiss { degree: GroupElement, at: GroupElement },

    #[error("{0} is supported outside its declared coset")]
    SupportOutsideCoset(String),

    #[error("group {0} is finite; use the exhaustive solver")]
    FiniteGroup(String),

    #[error("empty window")]
    EmptyWindow,

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("product is not a verified transposed Poisson structure: {0}")]
    Unverified(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
