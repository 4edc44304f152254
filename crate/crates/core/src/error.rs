use thiserror::Error;

/// Errors raised by model construction, estimators and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("mode {mode} is outside 1..={dim}")]
    ModeOutOfRange { mode: usize, dim: usize },

    #[error("frame is not orthonormal (Gram defect {defect:.3e})")]
    NotOrthonormal { defect: f64 },

    #[error("subspace is not invariant under the covariance operator (defect {defect:.3e})")]
    NotInvariant { defect: f64 },

    #[error("{0} requires a nonempty subspace")]
    EmptySubspace(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("basis `{0}` has no analytic eigenfunctions to evaluate")]
    AbstractBasis(String),

    #[error("functional has zero variance: <Qb, P_U b> = {0:.3e} (b is effectively in the orthogonal complement of U)")]
    DegenerateFunctional(f64),

    #[error("hypothesis violated: {0} is the zero operator")]
    ZeroOperator(&'static str),

    #[error("residual norm is zero (probability-zero event)")]
    ZeroResidual,

    #[error("<c, Y> is not unbiased for <b, zeta>: |P_U c - P_U b| = {0:.3e}")]
    NotUnbiased(f64),

    #[error("design operator is not injective (Gram eigenvalue ratio {0:.3e})")]
    RankDeficient(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
