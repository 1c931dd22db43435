use thiserror::Error;

/// Errors produced by the library. Everything else is a pure function of its inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("the {0}-adic valuation of zero is undefined")]
    ZeroValuation(u64),

    #[error("partition {partition} does not sum to {n}")]
    PartitionMismatch { n: u64, partition: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cycle type {cycle_type} has a part longer than {max_len}")]
    CycleTooLong { cycle_type: String, max_len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} = {value} exceeds the cap of {cap}")]
    AboveCap { what: &'static str, value: u64, cap: u64 },

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("determinant has a nonzero imaginary part (n = {n}, l = {l})")]
    ImaginaryResidue { n: usize, l: usize },

    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("series order {have} is too small; need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("Newton iteration did not converge for n = {n}, l = {l} (residual {residual:e})")]
    NonConvergence { n: u64, l: usize, residual: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
