use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for a marking of size {rank}")]
    InvalidGenerator { index: usize, rank: usize },

    #[error("letter exponent must be +1 or -1, got {0}")]
    InvalidExponent(i64),

    #[error("cannot parse word token `{0}`")]
    WordSyntax(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has determinant zero and is not injective on Z^{0}")]
    Singular(usize),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("torsion in the base group is not supported; the base must be free abelian Z^d")]
    TorsionUnsupported,

    #[error("HNN conditions failed: {0}")]
    ConditionsFailed(String),

    #[error("vertex budget of {cap} exceeded while enumerating the ball of radius {radius}")]
    BudgetExceeded { cap: usize, radius: usize },

    #[error("balls are not comparable: {0}")]
    IncomparableBalls(String),

    #[error("local isomorphism is not monotone in the radius (isomorphic at {iso}, not at {non_iso})")]
    NonMonotoneIsomorphism { iso: usize, non_iso: usize },

    #[error("eigen solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("support element lies outside the enumerated ball of radius {0}")]
    SupportEscapes(usize),

    #[error("witness vector is zero")]
    ZeroVector,

    #[error("pushdown increased the displacement of generator {generator}: {before} -> {after}")]
    PushdownViolation {
        generator: usize,
        before: f64,
        after: f64,
    },

    #[error("growth sequence is not submultiplicative at ({m}, {n})")]
    NotSubmultiplicative { m: usize, n: usize },

    #[error("spectral report for marking {index} differs from the limit report despite isomorphic balls")]
    SpectralMismatch { index: usize },

    #[error("{0}")]
    InvalidInput(String),
}
