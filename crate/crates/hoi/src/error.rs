//! Crate-wide error type.

use crate::subset::SubsetMask;
use thiserror::Error;

/// Error type for every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("subset is empty")]
    EmptySubset,

    #[error("subset {subset} references variables outside 0..{n_vars}")]
    InvalidSubset { subset: SubsetMask, n_vars: usize },

    #[error("system of {actual} variables is too small: at least {required} required")]
    SystemTooSmall { required: usize, actual: usize },

    #[error("variable {index} is not in the system {system}")]
    NotInSystem { index: usize, system: SubsetMask },

    #[error("variable indices must differ (both are {0})")]
    DuplicateIndex(usize),

    #[error("removing {gamma} leaves {remaining} variables; every term needs at least 3")]
    GradientOrderTooHigh { gamma: SubsetMask, remaining: usize },

    #[error("every alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("probability table has {len} entries, expected {expected}")]
    TableShape { len: usize, expected: usize },

    #[error("probability mass at state {index} is negative ({mass})")]
    NegativeMass { index: usize, mass: f64 },

    #[error("probability masses sum to {sum:.15}, expected 1 within 1e-12")]
    NotNormalized { sum: f64 },

    #[error("table of {states} states exceeds the cap of {cap}")]
    TableTooLarge { states: usize, cap: usize },

    #[error("state digit {digit} out of range for alphabet of size {alphabet}")]
    DigitOutOfRange { digit: usize, alphabet: usize },

    #[error("data matrix must have n_obs >= n_vars + 2, got {n_obs} observations for {n_vars} variables")]
    TooFewObservations { n_obs: usize, n_vars: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("column {index} is constant; normal-score ranks are undefined")]
    ConstantColumn { index: usize },

    #[error("correlation matrix is singular or near-singular (condition number {cond:.3e}); consider a ridge")]
    SingularCorrelation { cond: f64 },

    #[error("correlation matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("subset correlation matrix has non-positive determinant; numerical breakdown")]
    NumericalBreakdown,

    #[error("couplings must form a symmetric matrix with zero diagonal (violated at [{i}][{j}])")]
    AsymmetricCouplings { i: usize, j: usize },

    #[error("inverse temperature must be non-negative, got {0}")]
    NegativeBeta(f64),

    #[error("n_boot must be at least {required}, got {actual}")]
    TooFewReplicates { required: usize, actual: usize },

    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    BadAlpha(f64),

    #[error("bootstrap statistic kept failing after {attempts} redraws; last error: {last}")]
    BootstrapExhausted { attempts: usize, last: String },

    #[error("scan order must be 3 or 4, got {0}")]
    BadScanOrder(usize),

    #[error("log returns need positive values; row {row} is {value}")]
    NonPositiveValue { row: usize, value: f64 },

    #[error("unknown column '{0}'")]
    UnknownColumn(String),

    #[error(
        "discrete backend requires non-negative integer codes; row {row}, column {col} is {value}"
    )]
    NotIntegerCoded { row: usize, col: usize, value: f64 },

    #[error("{0}")]
    Parse(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
