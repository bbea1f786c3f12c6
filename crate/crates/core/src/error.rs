use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative quantity")]
    NegativeInput,
    #[error("square root of {0} does not exist in the rational field")]
    NotEuclidean(String),
    #[error("line through two coincident points")]
    DegenerateLine,
    #[error("plane spanning vectors are linearly dependent")]
    DegeneratePlane,
    #[error("cone slope must be positive")]
    NonPositiveSlope,
    #[error("point is not on the cone")]
    NotOnCone,
    #[error("point is the cone vertex")]
    VertexInput,
    #[error("point is not outside the cone")]
    NotOutside,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{0} is not an inertial observer")]
    NotAnObserver(String),
    #[error("unknown body {0}")]
    UnknownBody(String),
    #[error("boost speed is not below the speed of light")]
    SuperluminalBoost,
    #[error("axiom not applicable: {0}")]
    NotApplicable(String),
    #[error("pair is not faster than light")]
    NotFtl,
    #[error("bad hypothesis: {0}")]
    BadHypothesis(String),
    #[error("singular coordinate map")]
    SingularMap,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
