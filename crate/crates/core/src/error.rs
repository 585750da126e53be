use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix {matrix} is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite {
        matrix: &'static str,
        index: usize,
        pivot: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} is too small (need n >= {min})")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("invalid annulus bounds: need 0 < alpha < beta, got alpha = {alpha}, beta = {beta}")]
    BadBounds { alpha: f64, beta: f64 },

    #[error("lower-bound reduction failed: f_bar = {f_bar} is not negative")]
    NonNegativeFbar { f_bar: f64 },

    #[error("linearization point must be positive, got t = {t}")]
    NonPositiveT { t: f64 },

    #[error("matrix {matrix} is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    NotSymmetric {
        matrix: &'static str,
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed instance file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by reading or writing files.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
