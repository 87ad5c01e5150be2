use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("digit index {index} out of range for a register of {digits} digits")]
    IndexOutOfRange { index: usize, digits: usize },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{a} has no inverse modulo {q}")]
    NoInverse { a: u64, q: u64 },

    #[error("linear system is underdetermined: rank {rank} < {unknowns}")]
    Underdetermined { rank: usize, unknowns: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("workload of {requested} exceeds the configured cap of {cap}")]
    CapExceeded { requested: u64, cap: u64 },

    #[error("no primes in [{lo}, {hi})")]
    EmptyRange { lo: u64, hi: u64 },

    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("oracle access violation: {0}")]
    AccessViolation(String),

    #[error("malformed encoding: {0}")]
    Decode(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
