use thiserror::Error;

/// Errors raised by run-probability computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("run length must be at least 1")]
    ZeroRunLength,

    /// The corollary closed form only holds when at most one run of size r fits.
    #[error(
        "corollary requires 2r ≥ n and r ≤ n (valid r for n = {n}: {min_r}..={n}), got r = {r}"
    )]
    CorollaryDomain { n: u64, r: u64, min_r: u64 },

    #[error("brute-force enumeration is capped at n ≤ {cap}, got n = {n}")]
    BruteForceCap { n: u64, cap: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T, E = RunError> = std::result::Result<T, E>;
