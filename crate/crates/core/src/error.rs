use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scoring vector is empty")]
    Empty,
    #[error("values are not nonincreasing at index {index}")]
    NotNonincreasing { index: usize },
    #[error("scoring vector has a negative entry ({value}); shift it to be nonnegative")]
    NegativeScore { value: i64 },
    #[error("ladders disagree on the step size ({first} vs {other})")]
    StepMismatch { first: i64, other: i64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("integer overflow in {context}")]
    Overflow { context: &'static str },
    #[error("committee size k={k} must satisfy 1 <= k <= {max}")]
    CommitteeOutOfRange { k: usize, max: usize },
    #[error("displacement level {level} exceeds the cap {max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("boundary sets are empty (level 0)")]
    EmptyBoundary,
    #[error("invalid candidate data: {0}")]
    InvalidCandidates(String),
    #[error("sumset exceeds the cap of {cap} elements")]
    SumsetTooLarge { cap: usize },
    #[error("input violates the extension preconditions: {0}")]
    InfeasibleInput(String),
    #[error("aggregate vector is not realizable by the given ladders")]
    NotRealizable,
    #[error("realization failed for a realizable aggregate: {0}")]
    InternalRealizationFailure(String),
    #[error("cutoff {cutoff} is not certified feasible at level {level}")]
    NotCertified { level: usize, cutoff: i64 },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("dispersion must lie in (0, 1], got {0}")]
    InvalidDispersion(f64),
    #[error("line {line}: incomplete or tied ranking")]
    IncompleteRanking { line: usize },
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("declared {declared} alternatives but observed {observed}")]
    CountMismatch { declared: usize, observed: usize },
    #[error("number of alternatives is neither declared nor inferable")]
    UndeclaredAlternatives,
    #[error("invalid scoring rule `{0}`")]
    InvalidRule(String),
}

impl Error {
    pub(crate) fn overflow(context: &'static str) -> Self {
        Error::Overflow { context }
    }
}
