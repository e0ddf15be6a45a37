use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("unsupported Clifford dimension {0} (must be even, 2..=8)")]
    BadCliffordDimension(usize),

    #[error("singular jet: constant term {0} is not invertible")]
    SingularJet(String),

    #[error("square root needs a positive constant term, got {0}")]
    NonPositiveJet(String),

    #[error("truncation exhausted: {0}")]
    TruncationExhausted(String),

    #[error("form is not antisymmetric: {0}")]
    NotAntisymmetric(String),

    #[error("metric is not positive definite at the base point")]
    NotPositiveDefinite,

    #[error("vector field is not Killing (max residual {0:e})")]
    InvalidKilling(f64),

    #[error("operator is not of Laplace type: {0}")]
    NotLaplaceType(String),

    #[error("symbol is not elliptic: {0}")]
    NotElliptic(String),

    #[error("half-symbol has a pole away from ±i: {0}")]
    ForeignPole(String),

    #[error("integrand is not absolutely integrable: {0}")]
    NotIntegrable(String),

    #[error("metric is not of collar form: {0}")]
    NotCollar(String),

    #[error("chart `{0}` is not available in the {1} tier")]
    TierUnsupported(String, crate::scalars::Tier),

    #[error("case parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("case validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("unknown registry id `{0}`")]
    UnknownChart(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
