//! Small combinatorial helpers shared by the counting back ends.

use num::{BigUint, One, Zero};

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num::integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Sum of binomials `C(n, lo) + ... + C(n, hi)` (empty when `lo > hi`).
pub fn binomial_sum(n: u32, lo: u32, hi: u32) -> BigUint {
    let mut acc = BigUint::zero();
    let mut k = lo;
    while k <= hi {
        acc += binomial(n, k);
        k += 1;
    }
    acc
}

/// Number of `L`-bit windows with weight at least `W`.
pub fn valid_window_count(window_len: u32, min_weight: u32) -> BigUint {
    binomial_sum(window_len, min_weight, window_len)
}

/// All `len`-bit values with exactly `weight` ones, in ascending order
/// (Gosper's hack).
pub fn bit_patterns(len: u32, weight: u32) -> Vec<u64> {
    assert!(len <= 63, "bit patterns limited to 63-bit words");
    if weight > len {
        return Vec::new();
    }
    if weight == 0 {
        return vec![0];
    }
    let max = if len == 63 { u64::MAX >> 1 } else { (1u64 << len) - 1 };
    let mut out = Vec::new();
    let mut v = (1u64 << weight) - 1;
    while v <= max {
        out.push(v);
        let c = v & v.wrapping_neg();
        let r = match v.checked_add(c) {
            Some(r) => r,
            None => break,
        };
        v = r | (((v ^ r) / c) >> 2);
        if v == r && c == 0 {
            break;
        }
    }
    out
}

/// All `len`-bit values with weight at least `min_weight`, ascending.
pub fn bit_patterns_at_least(len: u32, min_weight: u32) -> Vec<u64> {
    let mut all: Vec<u64> = (min_weight..=len).flat_map(|w| bit_patterns(len, w)).collect();
    all.sort_unstable();
    all
}

/// `(1, 1, ..., 1)` of the requested dimension.
pub fn ones(dim: usize) -> Vec<BigUint> {
    vec![BigUint::one(); dim]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(4, 5), BigUint::zero());
        assert_eq!(binomial_sum(4, 3, 4), BigUint::from(5u32));
        assert_eq!(binomial_sum(4, 3, 2), BigUint::zero());
        assert_eq!(valid_window_count(3, 2), BigUint::from(4u32));
    }

    #[test]
    fn pattern_enumeration_matches_binomials() {
        for len in 0..=10u32 {
            for w in 0..=len {
                let pats = bit_patterns(len, w);
                assert_eq!(BigUint::from(pats.len()), binomial(len, w), "C({len},{w})");
                assert!(pats.iter().all(|p| p.count_ones() == w));
                assert!(pats.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn filtered_patterns_are_sorted() {
        let pats = bit_patterns_at_least(3, 2);
        assert_eq!(pats, vec![0b011, 0b101, 0b110, 0b111]);
    }
}
