use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CpvError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The integrand produced NaN or ±∞ at a quadrature node.
    #[error("integrand is not finite at x = {x:e} (got {value})")]
    NonFiniteIntegrand { x: f64, value: f64 },

    #[error("unknown method `{name}` (available: {available})")]
    UnknownMethod { name: String, available: String },

    #[error("method `{0}` is already registered")]
    DuplicateMethod(String),

    #[error("reference value for case {case} disagrees with its closed form: frozen {frozen:e}, closed form {closed:e}")]
    OracleDisagreement {
        case: String,
        frozen: f64,
        closed: f64,
    },
}

impl CpvError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CpvError::InvalidArgument(msg.into())
    }
}
