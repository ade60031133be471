use thiserror::Error;

/// Errors raised by the kernel. Every variant has a stable machine-readable
/// name returned by [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable {0} has no value in the assignment")]
    MissingVariable(String),
    #[error("series must have zero constant term for composition")]
    NonZeroConstantTerm,
    #[error("linear coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("constant term is not invertible")]
    NonInvertibleConstant,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("first entry must be 1")]
    FirstEntryNotOne,
    #[error("first entry is not invertible")]
    NonInvertibleFirstEntry,
    #[error("size {n} exceeds the non-crossing enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("order {got} is too small, need at least {needed}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("universal polynomial has a non-integer coefficient {0}")]
    NonIntegerCoefficient(String),
    #[error("Hurwitz weights differ")]
    LambdaMismatch,
    #[error("index {index} out of range 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("weights sum to {0}, expected 1")]
    WeightSum(String),
    #[error("parameter violation: {0}")]
    Parameter(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MissingVariable(_) => "missing_variable",
            Error::NonZeroConstantTerm => "nonzero_constant_term",
            Error::NonInvertibleLeading => "non_invertible_leading_coefficient",
            Error::NonInvertibleConstant => "non_invertible_constant_term",
            Error::ConstantTermNotOne => "constant_term_not_one",
            Error::FirstEntryNotOne => "first_entry_not_one",
            Error::NonInvertibleFirstEntry => "non_invertible_first_entry",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InsufficientOrder { .. } => "insufficient_order",
            Error::OrderMismatch(..) => "order_mismatch",
            Error::NonIntegerCoefficient(_) => "non_integer_coefficient",
            Error::LambdaMismatch => "lambda_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::WeightSum(_) => "weight_sum",
            Error::Parameter(_) => "parameter_violation",
            Error::UnknownSuite(_) => "unknown_suite",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
