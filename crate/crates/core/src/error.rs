use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant renders as a single
/// line so the CLI can emit it as a machine-parsable reason.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("points are not full dimensional (affine rank {rank}, expected {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("interpolation mismatch at m = {m}: counted {counted}, polynomial gives {predicted}")]
    InterpolationMismatch { m: i64, counted: String, predicted: String },

    #[error("base point {0} is not a lattice point of the polytope")]
    BasePointOutside(String),
    #[error("fan support is not convex: {0}")]
    NonConvexSupport(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("point {0} lies outside the fan support")]
    OutsideSupport(String),
    #[error("cone {0} is not in the fan")]
    ConeNotInFan(String),
    #[error("the involution is not defined on the box of the zero cone")]
    ZeroConeBox,

    #[error("weight class {k} is not polynomial at horizon {horizon}: {detail}")]
    NotPolynomialAtHorizon { k: String, horizon: usize, detail: String },
    #[error("lambda out of range: {0}")]
    LambdaOutOfRange(String),
    #[error("pole at evaluation point: {0}")]
    PoleAtEvaluationPoint(String),
    #[error("power {base}^({exponent}) is irrational")]
    IrrationalPower { base: String, exponent: String },

    #[error("symmetry violated: {0}")]
    SymmetryViolated(String),
    #[error("supports differ: {0}")]
    SupportMismatch(String),
    #[error("lambda' is not piecewise linear on the coarse fan: {0}")]
    LambdaPrimeNotPiecewiseLinear(String),
    #[error("lambda' out of range: {0}")]
    LambdaPrimeOutOfRange(String),
    #[error("reciprocity violated: {0}")]
    ReciprocityViolated(String),
    #[error("equivalence violated: {0}")]
    EquivalenceViolated(String),
    #[error("grouping mismatch: {0}")]
    GroupingMismatch(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    /// Whether the error means a hypothesis did not hold, as opposed to a
    /// computation that contradicted an identity.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::PreconditionUnmet(_)
                | Error::LambdaOutOfRange(_)
                | Error::LambdaPrimeNotPiecewiseLinear(_)
                | Error::LambdaPrimeOutOfRange(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
