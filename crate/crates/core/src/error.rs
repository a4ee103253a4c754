use thiserror::Error;

/// Errors produced by the algebra, the criteria, and the closure oracle.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Matrix dimension below the smallest meaningful system (N >= 2).
    #[error("invalid dimension {n}: need N >= 2")]
    InvalidDimension { n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Input matrix fails the skew-Hermitian check beyond tolerance.
    #[error("matrix is not skew-Hermitian: |M[{i},{j}] + conj(M[{j},{i}])| = {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotSkewHermitian {
        i: usize,
        j: usize,
        residual: f64,
        tol: f64,
    },

    /// Input matrix fails the Hermitian check beyond tolerance (1-based entry in message).
    #[error("coupling matrix is not Hermitian at entry ({i},{j}): |H[{i},{j}] - conj(H[{j},{i}])| = {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian {
        i: usize,
        j: usize,
        residual: f64,
        tol: f64,
    },

    #[error("matrix is not traceless: |trace| = {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotTraceless { residual: f64, tol: f64 },

    #[error("invalid input: {0}")]
    Validation(String),

    /// An operation that needs structure the input lacks (e.g. no touched roots).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Two independent computations of the same quantity disagree; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    /// The bracket closure did not stabilize within the generation budget.
    #[error("bracket closure did not stabilize within {max_generations} generations (partial dimension {dimension})")]
    NonConvergence {
        dimension: usize,
        max_generations: usize,
    },

    /// A sufficient criterion fired while the rank oracle disagrees (or vice versa).
    /// Sufficiency must never be violated, so this is a fatal bug indicator.
    #[error("oracle contradiction: {0}")]
    OracleContradiction(String),
}
