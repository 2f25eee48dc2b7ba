use thiserror::Error;

/// Crate-wide error type.
///
/// Errors fall into three classes mirrored by the CLI exit codes:
/// input errors (1), budget errors (2), internal errors (3).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("variable index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("defining function is not real")]
    NotReal,

    #[error("point is off the boundary: |r(p)| = {residual:.3e} exceeds {tol:.3e}")]
    OffBoundary { residual: f64, tol: f64 },

    #[error("point is off the variety: residual {residual:.3e} exceeds {tol:.3e}")]
    OffVariety { residual: f64, tol: f64 },

    #[error("gradient of the defining function vanishes at the point")]
    DegenerateGradient,

    #[error("frame direction degenerate: derivative along the graph direction vanishes")]
    DegenerateFrame,

    #[error("invalid q = {q}; expected 1 <= q <= {max}")]
    InvalidQ { q: usize, max: usize },

    #[error("metric is not Hermitian positive definite")]
    BadMetric,

    #[error("Groebner budget exceeded after {reductions} reductions (limit {limit})")]
    GroebnerBudget { reductions: usize, limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("problem file error: {0}")]
    Problem(String),

    #[error("map is not holomorphic: component {component} depends on a conjugated parameter")]
    NotHolomorphic { component: usize },

    #[error("map base point is off the boundary: |r(phi(0))| = {residual:.3e}")]
    MapOffBoundary { residual: f64 },

    #[error("vector field kind mismatch")]
    FieldKindMismatch,

    #[error("vector field is not tangent to the variety: field {field}, generator {generator}")]
    FieldNotTangent { field: usize, generator: usize },

    #[error("variety is not contained in the boundary: max |r| = {max_residual:.3e} on samples")]
    NotInBoundary { max_residual: f64 },

    #[error("distribution rank jumps across samples ({0} vs {1})")]
    RankJump(usize, usize),

    #[error("rank computation degenerate at the base point; try a nearby generic point")]
    DegenerateRank,

    #[error("no sample points found on the variety intersected with the boundary")]
    NoSamples,

    #[error("chain step requires a running state, found {0}")]
    ChainNotRunning(String),

    #[error("eigenvalue iteration failed to converge")]
    EigenNoConvergence,

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Exit-code class for the CLI: 1 input, 2 budget, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GroebnerBudget { .. } => 2,
            Error::EigenNoConvergence | Error::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
