use bqo_core::array::ArrayError;
use bqo_core::barrier::BarrierError;
use bqo_core::decomp::DecompError;
use bqo_core::hset::HsetError;
use bqo_core::mba::MbaError;
use bqo_core::ordinal::OrdinalError;
use bqo_core::poset::PosetError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Malformed input or a violated precondition.
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Domain(_) => 1,
            CliError::Budget(_) => 2,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage-error",
            CliError::Domain(_) => "violation",
            CliError::Budget(_) => "budget-exceeded",
        }
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::SearchBudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ArrayError> for CliError {
    fn from(e: ArrayError) -> Self {
        match e {
            ArrayError::SearchBudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<MbaError> for CliError {
    fn from(e: MbaError) -> Self {
        match e {
            MbaError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(BarrierError, DecompError, HsetError, OrdinalError);

pub type CliResult<T> = Result<T, CliError>;
