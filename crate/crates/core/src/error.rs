use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("active submatrix is not positive definite (rank-deficient design)")]
    SingularSubmatrix,

    #[error("design matrix is rank deficient (eigenvalue ratio {ratio:e})")]
    RankDeficient { ratio: f64 },

    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("sign entries must be -1, 0 or +1, got {0}")]
    InvalidSign(i64),

    #[error("least-squares coefficient {index} is zero, adaptive weight would be infinite")]
    ZeroOlsCoefficient { index: usize },

    #[error("no valid orthant move from lambda = {lambda}")]
    NoValidCandidate { lambda: f64 },

    #[error("root solver did not converge within {iters} iterations")]
    ConvergenceFailure { iters: usize },

    #[error("p = {p} exceeds the exhaustive search cap of {cap}")]
    DimensionCap { p: usize, cap: usize },

    #[error("empty data: need at least one row and one column")]
    EmptyData,
}
