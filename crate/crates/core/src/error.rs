use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: expected {expected}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: String,
    },

    #[error("matrix is not Hermitian (max |m_jk - conj(m_kj)| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not unitary (max |U^dag U - I| = {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("density-matrix validation failed: {0}")]
    ValidationFailed(String),

    #[error("payoff trace has imaginary part {imag:e}")]
    NumericalInconsistency { imag: f64 },

    #[error("NE indicator is not monotone in mu ({sign_changes} sign changes over the scan)")]
    NotMonotone { sign_changes: usize },

    #[error("strategies mix the two-parameter and three-parameter conventions")]
    ConventionMismatch,

    #[error("invalid mixed strategy: {0}")]
    InvalidMixedStrategy(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, expected: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            value,
            expected: expected.into(),
        }
    }
}
