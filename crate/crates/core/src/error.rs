use thiserror::Error;

use crate::space::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong before a computation even starts.
///
/// A matrix that fails the b-metric axioms is *not* an error for
/// [`validate_b_metric`](crate::space::validate_b_metric); it is only an
/// error where a valid space is required.
#[derive(Debug, Error)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },

    #[error("distance matrix is empty; a space needs at least one point")]
    EmptySpace,

    #[error("distance entry ({i}, {j}) is negative: {value}")]
    NegativeEntry { i: usize, j: usize, value: f64 },

    #[error("distance entry ({i}, {j}) is not finite")]
    NonFiniteEntry { i: usize, j: usize },

    #[error("b-metric coefficient must be a finite real >= 1, got {0}")]
    CoefficientBelowOne(f64),

    #[error("{labels} point labels for a {size}x{size} distance matrix")]
    LabelCount { labels: usize, size: usize },

    #[error("distance matrix violates the b-metric axioms ({} violation(s))", .0.violations.len())]
    NotBMetric(Box<ValidationReport>),

    #[error("axioms (i)/(ii) fail at ({i}, {j}); minimal coefficient is undefined")]
    NotSemimetric { i: usize, j: usize },

    #[error("index {index} out of range for a space of {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("self-map has {map} entries but the space has {space} points")]
    SizeMismatch { map: usize, space: usize },

    #[error("contraction factor must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),

    #[error("invalid {parameter}: {message}")]
    InvalidConfig { parameter: &'static str, message: String },

    #[error("certified stopping needs s*alpha < 1, got s*alpha = {s_alpha}")]
    HypothesisViolation { s_alpha: f64 },

    #[error("refusing to enumerate {n}^{n} self-maps (limit n <= {limit}); sample maps instead")]
    EnumerationTooLarge { n: usize, limit: usize },

    #[error("residual trace is empty")]
    EmptyTrace,

    #[error("map expression: {0}")]
    Expression(#[from] crate::expr::ParseError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
