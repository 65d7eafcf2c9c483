use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("undefined slope: rank is zero")]
    UndefinedSlope,
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("invalid geometry context: {0}")]
    InvalidContext(String),
    #[error("dimension mismatch: expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("rank {rank} out of range 0..={max} for {field}")]
    RankOutOfRange { field: &'static str, rank: u32, max: u32 },
    #[error("proposition hypothesis violated: deg(L) = {0} must be non-negative")]
    NegativeTwist(i64),
    #[error("invalid wall witness: {0}")]
    InvalidWitness(String),
    #[error("empty interval: lo = {lo} exceeds hi = {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("the degree filter needs a geometry context with deg(L) >= 0")]
    MissingFilterContext,
    #[error("genus hypothesis: g = {0} but g >= 2 is required")]
    GenusHypothesis(u32),
    #[error("degree bound {given} is insufficient; at least {required} is required")]
    InsufficientDegreeBound { given: u64, required: String },
    #[error("degree {0} does not fit in a 64-bit integer")]
    DegreeOverflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
