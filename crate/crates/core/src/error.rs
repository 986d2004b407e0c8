use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Derivative order 0 has no layered formula.
    #[error("derivative order must be at least 1")]
    ZeroOrder,

    #[error("partition is not in the {class} class: {reason}")]
    PartitionClass { class: &'static str, reason: String },

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    #[error("layer invariant violated (n={n}, k={k}): {reason}")]
    LayerInvariant { n: u32, k: i64, reason: String },

    #[error("division by zero: {0} vanishes at the evaluation point")]
    DivisionByZero(&'static str),

    #[error("derivative table is missing {0}")]
    MissingOrder(String),

    #[error("point is not on the curve: F(x0, y0) = {0}")]
    NotOnCurve(f64),

    #[error("jets are incompatible: {0}")]
    JetMismatch(String),

    #[error("formula kind {found} cannot be used here (expected {expected})")]
    KindMismatch { expected: &'static str, found: String },

    #[error("malformed table: {0}")]
    Table(String),

    #[error("malformed formula json: {0}")]
    Json(String),
}

impl Error {
    /// Errors caused by a numeric precondition at the evaluation point
    /// (as opposed to malformed input).
    pub fn is_numeric_precondition(&self) -> bool {
        matches!(self, Error::DivisionByZero(_) | Error::NotOnCurve(_))
    }
}
