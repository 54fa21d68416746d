use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term is zero; no multiplicative inverse")]
    ZeroConstantTerm,

    #[error("logarithm requires constant term 1, found {0}")]
    LogConstantTerm(String),

    #[error("factorization of a {bits}-bit integer exceeds the trial-division budget")]
    FactorizationBudget { bits: u32 },

    #[error("invalid float configuration: {0}")]
    InvalidConfig(String),

    #[error("insufficient working precision at z = {z}: partial sums reach 2^{max_term_log2:.1} but |value| is 2^{value_log2:.1} at {bits} bits")]
    PrecisionInsufficient {
        z: String,
        bits: u32,
        max_term_log2: f64,
        value_log2: f64,
    },

    #[error("Newton iteration from seed {seed} did not converge in {iterations} steps (last residual {residual:e})")]
    NoConvergence {
        seed: String,
        iterations: usize,
        residual: f64,
    },

    #[error("zero #{index}: {source}")]
    ZeroIndex {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("only {found} zeros could be located, {wanted} requested")]
    MissingZeros { found: usize, wanted: usize },

    #[error("{0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
