use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("odd dimension {0}: pfaffian needs an even-dimensional matrix")]
    OddDimension(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid torus: {0}")]
    InvalidTorus(String),

    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// det(M^l - I) = 0: the fixed locus may be positive dimensional.
    #[error("degenerate: positive-dimensional fixed locus possible (det(M^{iterate} - I) = 0)")]
    Degenerate { iterate: u32 },

    #[error("sublattice is not invariant under the endomorphism")]
    NotInvariant,

    #[error("sublattice basis is not saturated (elementary divisors {0})")]
    NotSaturated(String),

    #[error("translation does not lie in the span of the sublattice")]
    TranslationOutsideSpan,

    #[error("translate is not periodic: f^{period}(Q) != Q")]
    NotPeriodic { period: u32 },

    #[error("brute-force grid of {required} points exceeds budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("endomorphism does not descend: {0}")]
    IncompatibleLift(String),

    #[error("root finder did not converge: {0}")]
    RootFinding(String),

    #[error("missing Riemann form on torus")]
    MissingRiemannForm,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the refusals that the command line maps to exit status 2.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Degenerate { .. } | Error::BudgetExceeded { .. } | Error::SizeCap(_))
    }
}
