use num::BigUint;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("brute-force enumeration of length {n} exceeds the oracle limit {limit}")]
    OracleLimitExceeded { n: u64, limit: u64 },

    #[error("window length {window_len} is not a multiple of skip length {skip_len}")]
    NotAligned { window_len: u32, skip_len: u32 },

    #[error("bit-string length {len} is not a multiple of the skip length {skip_len}")]
    BadLength { len: usize, skip_len: u32 },

    #[error("FSM would have {states} states, exceeding the limit {limit}")]
    StateLimitExceeded { states: BigUint, limit: usize },

    #[error("bad-word set would have {words} members, exceeding the limit {limit}")]
    BadWordLimitExceeded { words: BigUint, limit: usize },

    #[error("power iteration did not converge: best lambda {lambda}, residual {residual}")]
    NoConvergence { lambda: f64, residual: f64 },

    #[error("no codewords of length {n}")]
    EmptyCode { n: u64 },

    #[error("matrix dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("channel alphabet too large: {0}")]
    AlphabetTooLarge(String),

    #[error("state {state} has no outgoing edge")]
    InfeasibleFsm { state: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
