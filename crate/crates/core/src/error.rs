use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scale factor must be positive, got {0}")]
    NonPositiveFactor(i64),

    #[error("filter scale N must be at least 2, got {0}")]
    InvalidScale(i64),

    #[error("filters with different scales: {0} and {1}")]
    ScaleMismatch(i64, i64),

    #[error("the zero polynomial is not a valid filter")]
    ZeroFilter,

    #[error("iteration count must be at least {min}, got {got}")]
    InvalidCount { min: i64, got: i64 },

    #[error("rotation parameter {re}+{im}i is not on the unit circle")]
    NotUnimodular { re: f64, im: f64 },

    #[error("stretch parameter p must be odd and positive, got {0}")]
    InvalidStretch(i64),

    #[error("orbit {0:?} is not closed under k -> 2k mod p (p = {1})")]
    NotSigmaClosed(Vec<usize>, usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(
        "coefficient at exponent {exponent} (magnitude {magnitude:e}) escapes window [-{d}, {d}]"
    )]
    WindowEscape {
        exponent: i64,
        magnitude: f64,
        d: i64,
    },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("eigensolver failed: {0}")]
    Solver(String),

    #[error("{name} is not real-valued on the grid (imaginary part {imag:e})")]
    NotRealValued { name: &'static str, imag: f64 },

    #[error("invalid filter specification: {0}")]
    FilterSpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
