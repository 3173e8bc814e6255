use thiserror::Error;

/// Errors raised by series arithmetic, enumeration and the identity checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{0} requires a nonempty partition")]
    EmptyPartition(&'static str),

    #[error("order must be nonnegative, got {0}")]
    NegativeOrder(i64),

    #[error("cannot invert over the integers: leading coefficient {0} is not a unit")]
    NonUnitLeading(String),

    #[error("cannot invert the zero series")]
    ZeroSeries,

    #[error("inverse of an exact non-monomial needs a finite p-window; truncate first")]
    InexactInverse,

    #[error("exponent p^({0}/2) is not an integer power of p")]
    HalfIntegerExponent(i64),

    #[error("p-window exhausted: {0}; try a larger --p-order")]
    WindowExhausted(String),

    #[error("q-exponent offsets differ ({0}/24 vs {1}/24)")]
    OffsetMismatch(i64, i64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed series data: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
