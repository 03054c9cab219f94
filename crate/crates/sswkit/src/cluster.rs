//! Goulden-Jackson cluster method over bad words: counts aligned codewords
//! by excluding every `lJ`-bit window of weight below `W`.
//!
//! Works in the symbol variable (one symbol = one `J`-bit block). The
//! cluster unknowns satisfy a linear system whose coupling terms all carry a
//! positive power of `x`, so coefficients are computed degree by degree:
//! each degree depends only on strictly lower ones and one sweep is exact.

use std::collections::HashMap;

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

use crate::combin::{binomial_sum, bit_patterns};
use crate::error::{Error, Result};
use crate::params::SswParams;
use crate::series::{CountSeries, Method, TruncatedSeries};

/// Default ceiling on the number of bad words (linear-system unknowns).
pub const DEFAULT_BADWORD_LIMIT: usize = 4096;

/// All `lJ`-bit words of weight below `W`, ascending by value.
#[derive(Debug, Clone)]
pub struct BadWordSet {
    pub blocks: u32,
    pub skip_len: u32,
    pub words: Vec<u64>,
}

impl BadWordSet {
    pub fn word_len(&self) -> u32 {
        self.blocks * self.skip_len
    }
}

/// Enumerates the bad words of an aligned parameter set.
pub fn bad_words(params: &SswParams) -> Result<BadWordSet> {
    bad_words_with_limit(params, DEFAULT_BADWORD_LIMIT)
}

pub fn bad_words_with_limit(params: &SswParams, limit: usize) -> Result<BadWordSet> {
    let blocks = params.blocks_or_err()?;
    let l = params.window_len();
    let w = params.min_weight();
    if w > 0 {
        let count = binomial_sum(l, 0, w - 1);
        if l > 63 || count > BigUint::from(limit) {
            return Err(Error::BadWordLimitExceeded { words: count, limit });
        }
    }
    let mut words = Vec::new();
    for weight in 0..w {
        words.extend(bit_patterns(l, weight));
    }
    words.sort_unstable();
    Ok(BadWordSet { blocks, skip_len: params.skip_len(), words })
}

/// Block-aligned overlap depths: `o` is reported when the last `oJ` bits of
/// `prev` equal the first `oJ` bits of `next`, for `0 < o < blocks`.
pub fn overlaps(prev: u64, next: u64, blocks: u32, skip_len: u32) -> Vec<u32> {
    let word_bits = blocks * skip_len;
    (1..blocks)
        .filter(|o| {
            let bits = o * skip_len;
            let suffix = prev & ((1u64 << bits) - 1);
            let prefix = next >> (word_bits - bits);
            suffix == prefix
        })
        .collect()
}

/// Generating-function counts via the cluster method: solves the bad-word
/// system, assembles `1 / (1 - 2^J x - cluster(x))` over exact rationals and
/// reads off the coefficients at symbol degrees `l ..= l + k_max`.
pub fn gj_bad_series(params: &SswParams, k_max: u64) -> Result<CountSeries> {
    gj_bad_series_with_limit(params, k_max, DEFAULT_BADWORD_LIMIT)
}

pub fn gj_bad_series_with_limit(
    params: &SswParams,
    k_max: u64,
    limit: usize,
) -> Result<CountSeries> {
    let set = bad_words_with_limit(params, limit)?;
    let blocks = set.blocks as usize;
    let order = blocks + k_max as usize;
    let word_count = set.words.len();

    // couplings[t] lists (source word index, overlap depth) pairs feeding
    // cluster(x | word t).
    let mut couplings: Vec<Vec<(usize, u32)>> = vec![Vec::new(); word_count];
    for o in 1..set.blocks {
        let bits = o * set.skip_len;
        let word_bits = set.word_len();
        let mut by_prefix: HashMap<u64, Vec<usize>> = HashMap::new();
        for (t, &word) in set.words.iter().enumerate() {
            by_prefix.entry(word >> (word_bits - bits)).or_default().push(t);
        }
        for (p, &word) in set.words.iter().enumerate() {
            let suffix = word & ((1u64 << bits) - 1);
            if let Some(targets) = by_prefix.get(&suffix) {
                for &t in targets {
                    couplings[t].push((p, o));
                }
            }
        }
    }

    // cluster(x | word) = -x^blocks - sum over overlaps of
    // x^(blocks - o) * cluster(x | source); solved degree by degree.
    let mut coeffs: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); order + 1]; word_count];
    for degree in blocks..=order {
        for t in 0..word_count {
            let mut c = if degree == blocks { -BigInt::one() } else { BigInt::zero() };
            for &(p, o) in &couplings[t] {
                let shift = blocks - o as usize;
                let prior = &coeffs[p][degree - shift];
                if !prior.is_zero() {
                    c -= prior;
                }
            }
            coeffs[t][degree] = c;
        }
    }

    let mut cluster_total = vec![BigInt::zero(); order + 1];
    for t in 0..word_count {
        for (d, c) in coeffs[t].iter().enumerate() {
            cluster_total[d] += c;
        }
    }

    assemble_gj_counts(params, Method::GjBad, &cluster_total, k_max)
}

/// Turns a total cluster series into counts: builds the denominator
/// `1 - 2^J x - cluster(x)`, inverts it exactly and checks every reported
/// coefficient is a nonnegative integer.
pub(crate) fn assemble_gj_counts(
    params: &SswParams,
    method: Method,
    cluster_total: &[BigInt],
    k_max: u64,
) -> Result<CountSeries> {
    let blocks = params.blocks_or_err()? as usize;
    let order = cluster_total.len() - 1;
    debug_assert_eq!(order, blocks + k_max as usize);

    let alphabet = BigInt::one() << params.skip_len();
    let mut denom = TruncatedSeries::zero(order);
    denom.set_coeff(0, BigRational::one());
    denom.set_coeff(1, denom.coeff(1) - BigRational::from_integer(alphabet));
    for (d, c) in cluster_total.iter().enumerate() {
        if !c.is_zero() {
            denom.set_coeff(d, denom.coeff(d) - BigRational::from_integer(c.clone()));
        }
    }
    let series = denom.recip()?;

    let mut counts = CountSeries::new(*params, method);
    for k in blocks..=order {
        let coeff = series.coeff(k);
        if !coeff.is_integer() || coeff.is_negative() {
            return Err(Error::Internal(format!(
                "cluster expansion produced non-count coefficient {coeff} at degree {k}"
            )));
        }
        let count = coeff
            .to_integer()
            .to_biguint()
            .ok_or_else(|| Error::Internal("negative count".into()))?;
        counts.insert(params.length_at((k - blocks) as u64), count);
    }
    Ok(counts)
}
