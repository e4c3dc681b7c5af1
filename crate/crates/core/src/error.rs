use thiserror::Error;

/// Errors produced across the library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("points {0} and {1} coincide within the distinctness tolerance")]
    DuplicatePoints(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("need at least {required} points, got {found}")]
    TooFewPoints { required: usize, found: usize },
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("indices must differ (got {0} twice)")]
    SameIndex(usize),
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("configuration exceeds numeric limits ({points} points, dimension {dim})")]
    NumericalOverflow { points: usize, dim: usize },
    #[error("vector cannot be normalized (norm {0})")]
    ZeroVector(f64),
    #[error("sampling strategy {strategy} is not defined in dimension {dim}")]
    StrategyDimensionMismatch { strategy: &'static str, dim: usize },
    #[error("invalid sample plan: {0}")]
    InvalidPlan(String),
    #[error("configuration is degenerate (affine rank {rank} < {dim})")]
    DegenerateConfiguration { rank: usize, dim: usize },
    #[error("brute-force hull limited to {limit} points in dimension {dim}, got {found}")]
    TooManyPoints { dim: usize, limit: usize, found: usize },
    #[error("support maximizers {maximizers:?} do not span a face; competing faces {competing:?}")]
    AmbiguousTie {
        maximizers: Vec<usize>,
        competing: Vec<usize>,
    },
    #[error("point is not on the hull boundary (distance {0})")]
    NotOnBoundary(f64),
    #[error("operation requires dimension {required}, got {found}")]
    DimensionUnsupported { required: usize, found: usize },
    #[error("face {0} does not exist")]
    UnknownFace(usize),
    #[error("face {face} has dimension {dim}, expected at least {min}")]
    FaceTooSmall { face: usize, dim: usize, min: usize },
    #[error("distance query on an empty set")]
    EmptySet,
    #[error("no probe samples landed in the target region")]
    EmptyProbe,
    #[error("operation requires a degenerate configuration")]
    RequiresDegenerate,
    #[error("invalid epsilon schedule: {0}")]
    InvalidSchedule(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
