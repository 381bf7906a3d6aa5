use thiserror::Error;

/// Errors raised by constructions, validation and I/O.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate angle: apex coincides with a ray endpoint")]
    DegenerateAngle,
    #[error("point is not strictly outside the convex hull")]
    PointNotExterior,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),
    #[error("construction invariant violated: {0}")]
    ConstructionInvariantViolated(String),
    #[error("point set is not in convex position")]
    NotConvexPosition,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("index {0} is not a convex hull vertex")]
    NotHullVertex(usize),
    #[error("({0}, {1}) is not a convex hull edge")]
    NotHullEdge(usize, usize),
    #[error("oracle input too large: n = {n} exceeds cap {cap}")]
    OracleTooLarge { n: usize, cap: usize },
    #[error("bad family shape: {0}")]
    BadShape(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Short machine-readable tag, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateAngle => "degenerate-angle",
            Error::PointNotExterior => "point-not-exterior",
            Error::DegenerateInput(_) => "degenerate-input",
            Error::InvalidPointSet(_) => "invalid-point-set",
            Error::ConstructionInvariantViolated(_) => "construction-invariant-violated",
            Error::NotConvexPosition => "not-convex-position",
            Error::PreconditionViolated(_) => "precondition-violated",
            Error::NotHullVertex(_) => "not-hull-vertex",
            Error::NotHullEdge(..) => "not-hull-edge",
            Error::OracleTooLarge { .. } => "oracle-too-large",
            Error::BadShape(_) => "bad-shape",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
