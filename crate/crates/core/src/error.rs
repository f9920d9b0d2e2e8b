use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vector must hold at least one item")]
    Empty,

    #[error("max rating must be positive and finite, got {0}")]
    InvalidMaxRating(f64),

    #[error("rating {value} at index {index} is outside [0, {max}]")]
    RatingOutOfRange { index: usize, value: f64, max: f64 },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("customer rating vector has zero norm")]
    DegenerateCustomer,

    #[error("trust threshold must lie in (0, 1], got {0}")]
    InvalidTau(f64),

    #[error("profit at index {index} must be positive, got {value}")]
    NonPositiveProfit { index: usize, value: f64 },

    #[error("recommendation ratings sum to zero; purchase distribution undefined")]
    ZeroRecommendation,

    #[error("{0} similarity has no sphere form; use dice or jaccard")]
    UnsupportedMeasure(&'static str),

    #[error("binary search found no feasible witness, even at V = 0")]
    NoFeasibleWitness,

    #[error("grid oracle supports n <= {max}, got n = {n}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("rating {value} at index {index} is not a valid purchase probability input")]
    InvalidProbability { index: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
