use thiserror::Error;

/// Errors raised by the algebra and inverse routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion has no inverse (all components are zero)")]
    ZeroDivisor,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("complex-adjoint structure violated: deviation {deviation:.3e} exceeds {tol:.3e}")]
    StructureViolation { deviation: f64, tol: f64 },

    #[error("singular value decomposition did not converge")]
    ConvergenceFailure,

    #[error("matrix is numerically zero, no full-rank decomposition")]
    RankZero,

    #[error("ranks differ: rank(B) = {b}, rank(C) = {c}")]
    RankMismatch { b: usize, c: usize },

    #[error("core matrix G~ A F^ is numerically singular")]
    SingularCore,

    #[error("tensor is singular at frequency {frequency}")]
    Singular { frequency: usize },

    #[error("group inverse does not exist: frequency {frequency} has index {index} > 1")]
    IndexTooLarge { frequency: usize, index: usize },

    #[error("no tensor full-rank decomposition: {0}")]
    NoFullRankDecomposition(String),

    #[error("not invertible along the given tensors: residuals {residuals:?} exceed {tol:.1e}")]
    NotInvertibleAlong { residuals: [f64; 2], tol: f64 },

    #[error("equation A*X*B = C is inconsistent: residual {residual:.3e} exceeds {tol:.1e}")]
    Inconsistent { residual: f64, tol: f64 },

    #[error("unsupported Penrose class {0}; expected {{1}}, {{1,3}} or {{1,4}}")]
    UnsupportedClass(String),

    #[error("family member failed certification: residual {residual:.3e} exceeds {tol:.1e}")]
    CertificationFailed { residual: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
