//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by polytope construction, the LP solver, sampling and the
/// marginal-transform pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("diagonal index {k} out of range 1..={max} for n = {n}")]
    DiagonalIndexRange { k: usize, n: usize, max: usize },

    #[error("dimension n = {n} is too small; need n >= {min}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error(
        "n = {n} exceeds the dimension cap {cap}; the vertex matrix has 2^(n-1) columns, \
         raise the cap explicitly to accept the exponential cost"
    )]
    DimensionCap { n: usize, cap: usize },

    #[error("cut set element {element} outside 1..={n}")]
    CutSetElement { element: usize, n: usize },

    #[error("correlation entry {value} at position {index} outside [-1, 1]")]
    CorrelationRange { index: usize, value: f64 },

    #[error("agreement entry {value} at position {index} outside [0, 1]")]
    AgreementRange { index: usize, value: f64 },

    #[error("expected a vector of length {expected} for n = {n}, got {got}")]
    VectorLength { n: usize, expected: usize, got: usize },

    #[error("bit vector entry {value} at position {index} is not 0 or 1")]
    BitRange { index: usize, value: u8 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("pivot limit {limit} exceeded after {pivots} simplex pivots")]
    PivotLimit { pivots: usize, limit: usize },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("probability {p} outside the open interval (0, 1)")]
    ProbabilityRange { p: f64 },

    #[error("u = {u} outside the open interval (0, 1)")]
    UniformRange { u: f64 },

    #[error("invalid marginal: {0}")]
    InvalidMarginal(String),

    #[error("invalid mixing weights: {0}")]
    InvalidWeights(String),

    #[error("sample count must be at least {min}, got {got}")]
    SampleCount { min: usize, got: usize },

    #[error("column {column} is constant; its pairwise correlations are undefined")]
    ConstantColumn { column: usize },

    #[error(
        "target correlation {target} outside the attainable range [{rho_min}, {rho_max}]"
    )]
    TargetOutsideBounds {
        target: f64,
        rho_min: f64,
        rho_max: f64,
    },

    #[error(
        "pair ({i},{j}): target correlation {target} outside the attainable range \
         [{rho_min}, {rho_max}] for the given marginals"
    )]
    InfeasiblePair {
        i: usize,
        j: usize,
        target: f64,
        rho_min: f64,
        rho_max: f64,
    },

    #[error("degenerate correlation bounds: rho_min = rho_max = {value}")]
    DegenerateBounds { value: f64 },

    #[error("oracle supports n <= {cap}, got n = {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
