use thiserror::Error;

use crate::point::RayPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. `code()` gives the stable machine-readable name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("arity must be at least 1, got {0}")]
    InvalidArity(usize),

    #[error("point {point} is not a point of N x {{1..{arity}}}")]
    InvalidPoint { point: RayPoint, arity: usize },

    #[error("malformed encoding: {0}")]
    Malformed(String),

    #[error("translation amounts sum to {0}, a group element needs 0")]
    UnbalancedTranslation(i64),

    #[error("translation amounts sum to {0}, a monoid map needs a non-negative sum")]
    NegativeDeficit(i64),

    #[error("conflicting table entries for {0}")]
    ConflictingEntry(RayPoint),

    #[error("no table entry for {0} and the translation rule sends it off the ray")]
    MissingEntry(RayPoint),

    #[error("not a bijection: uncovered {uncovered:?}, doubly covered {doubly_covered:?}")]
    NotBijective {
        uncovered: Vec<RayPoint>,
        doubly_covered: Vec<RayPoint>,
    },

    #[error("not injective: doubly covered {doubly_covered:?}")]
    NotInjective { doubly_covered: Vec<RayPoint> },

    #[error("element has infinite order")]
    InfiniteOrder,

    #[error("element has finite order")]
    FiniteOrder,

    #[error("generator {0} has infinite order")]
    InfiniteOrderGenerator(usize),

    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),

    #[error("not a subgroup of the ambient group")]
    NotASubgroup,

    #[error("the infinite-order element does not normalize the finite subgroup")]
    NotNormalized,

    #[error("the finite part of the subgroup is not finite")]
    InfiniteFinitePart,

    #[error("element does not centralize the target")]
    NotCentralizing,

    #[error("ray {0} is not a vertex of the graph")]
    UnknownComponent(usize),

    #[error("vertex is not fixed by the subgroup")]
    NotFixed,

    #[error("point {0} lies outside the box")]
    SupportEscapesBox(RayPoint),

    #[error("box must have depth and arity at least 1")]
    EmptyBox,

    #[error("arithmetic overflow")]
    Overflow,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::InvalidArity(_) => "invalid_arity",
            Error::InvalidPoint { .. } => "invalid_point",
            Error::Malformed(_) => "malformed",
            Error::UnbalancedTranslation(_) => "unbalanced_translation",
            Error::NegativeDeficit(_) => "negative_deficit",
            Error::ConflictingEntry(_) => "conflicting_entry",
            Error::MissingEntry(_) => "missing_entry",
            Error::NotBijective { .. } => "not_bijective",
            Error::NotInjective { .. } => "not_injective",
            Error::InfiniteOrder => "infinite_order",
            Error::FiniteOrder => "finite_order",
            Error::InfiniteOrderGenerator(_) => "infinite_order_generator",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::NotASubgroup => "not_a_subgroup",
            Error::NotNormalized => "not_normalized",
            Error::InfiniteFinitePart => "infinite_f",
            Error::NotCentralizing => "not_centralizing",
            Error::UnknownComponent(_) => "unknown_component",
            Error::NotFixed => "not_fixed",
            Error::SupportEscapesBox(_) => "support_escapes_box",
            Error::EmptyBox => "empty_box",
            Error::Overflow => "overflow",
            Error::Internal(_) => "internal",
        }
    }
}
