use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation text: {0}")]
    MalformedText(String),
    #[error("letter `{letter}` occurs {count} time(s); every letter must occur exactly twice")]
    LetterCount { letter: String, count: usize },
    #[error("a row of the permutation is empty")]
    EmptyRow,
    #[error("not restrictable: {0}")]
    NotRestrictable(String),
    #[error("bad singularity pattern: {0}")]
    BadPattern(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unknown representative name `{0}`")]
    UnknownName(String),
    #[error("no positive admissible vector exists for this permutation")]
    Infeasible,
    #[error("no admissible vector with entries at most {0} was found")]
    BoundTooSmall(u64),
    #[error("invalid length vector: {0}")]
    BadLengths(String),
    #[error("separatrix trace exceeded its budget of {0} crossings")]
    TraceBudgetExceeded(u64),
    #[error("cylinder {0} is not simple")]
    NotSimple(usize),
    #[error("no cylinder with id {0}")]
    NoSuchCylinder(usize),
    #[error("the vertical direction has {0} cylinders, expected exactly one")]
    NotSingleCylinder(usize),
    #[error("no rotation exhibits a simple cylinder at a shared head letter")]
    NoSimpleCylinderForm,
    #[error("nothing found within a budget of {0} candidates")]
    NotFoundWithinBudget(usize),
    #[error("size limit exceeded: r + l = {size} > {limit}")]
    SizeLimit { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
