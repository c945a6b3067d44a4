use thiserror::Error;

/// Errors raised by the spectral and nodal computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("mode does not exist in this regime: {0}")]
    Regime(String),

    #[error("root finder did not converge after {iterations} iterations (last x = {last_x})")]
    NonConvergence { iterations: usize, last_x: f64 },

    #[error("candidate pool (slots 0..={pool}) cannot certify the {requested}-th eigenvalue")]
    CutoffTooSmall { requested: usize, pool: usize },

    #[error("scan grid too coarse: sign changes of sigma near h = {h} could not be separated")]
    ScanTooCoarse { h: f64 },

    #[error("Wronskian zero count mismatch: expected {expected}, found {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("critical-angle formulas disagree at ({x}, {y}): spread {spread}")]
    InconsistentTheta { x: f64, y: f64, spread: f64 },

    #[error("boundary zero count {count} exceeds the Sturm cap {cap}")]
    CapViolation { count: usize, cap: usize },

    #[error("nodal domain count did not stabilise under refinement (counts {counts:?})")]
    Unresolved { counts: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
