//! Exhaustive enumeration: the independent ground truth every other
//! counting method is checked against.

use num::BigUint;
use rayon::prelude::*;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::params::SswParams;

/// Default cap on the enumerated length (2^24 candidate strings).
pub const DEFAULT_ORACLE_LIMIT: u64 = 24;

/// True iff `b` satisfies the skip-sliding window constraint: its length is
/// `L + kJ` for some `k >= 0` and every window of `L` bits starting at
/// offsets `0, J, 2J, ...` has weight at least `W`. Total over all inputs.
pub fn is_valid_sequence(b: &BitString, params: &SswParams) -> bool {
    let k = match params.k_of(b.len() as u64) {
        Some(k) => k,
        None => return false,
    };
    let l = params.window_len() as usize;
    let j = params.skip_len() as usize;
    let w = params.min_weight() as u64;
    (0..=k as usize).all(|m| b.window_weight(m * j, l) >= w)
}

/// Exact number of valid strings of length `n`, counted by brute force over
/// all `2^n` bit patterns with the default enumeration budget.
pub fn brute_force_count(params: &SswParams, n: u64) -> Result<BigUint> {
    brute_force_count_with_limit(params, n, DEFAULT_ORACLE_LIMIT)
}

/// Like [`brute_force_count`] with a caller-chosen budget (`limit <= 62`).
///
/// Returns 0 for lengths not of the form `L + kJ`. The enumeration walks
/// integer bit patterns with early window rejection and partitions the range
/// across threads; the count is an exact sum either way.
pub fn brute_force_count_with_limit(params: &SswParams, n: u64, limit: u64) -> Result<BigUint> {
    let k = match params.k_of(n) {
        Some(k) => k,
        None => return Ok(BigUint::ZERO),
    };
    if n > limit || n > 62 {
        return Err(Error::OracleLimitExceeded { n, limit: limit.min(62) });
    }
    let l = u64::from(params.window_len());
    let j = u64::from(params.skip_len());
    let w = params.min_weight();
    let window = (1u64 << l) - 1;
    let masks: Vec<u64> = (0..=k).map(|m| window << (n - l - m * j)).collect();
    let total = 1u64 << n;
    let count = (0..total)
        .into_par_iter()
        .filter(|v| masks.iter().all(|&mask| (v & mask).count_ones() >= w))
        .count();
    Ok(BigUint::from(count))
}
