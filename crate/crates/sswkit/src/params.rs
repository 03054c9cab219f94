//! Constraint parameters and the grid of admissible codeword lengths.

use crate::error::{Error, Result};

/// The `(L, J, W)` triple of a skip-sliding window constraint: every window
/// of `L` consecutive bits starting at positions `1, J+1, 2J+1, ...` must
/// carry Hamming weight at least `W`.
///
/// Values are validated on construction, so a held `SswParams` always
/// satisfies `1 <= J <= L` and `0 <= W <= L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SswParams {
    window_len: u32,
    skip_len: u32,
    min_weight: u32,
}

impl SswParams {
    /// Validates and constructs the parameter triple.
    pub fn new(window_len: u32, skip_len: u32, min_weight: u32) -> Result<Self> {
        if skip_len < 1 {
            return Err(Error::InvalidParams("skip length must be at least 1".into()));
        }
        if skip_len > window_len {
            return Err(Error::InvalidParams(format!(
                "skip length {skip_len} exceeds window length {window_len}"
            )));
        }
        if min_weight > window_len {
            return Err(Error::InvalidParams(format!(
                "minimum weight {min_weight} exceeds window length {window_len}"
            )));
        }
        Ok(Self { window_len, skip_len, min_weight })
    }

    pub fn window_len(&self) -> u32 {
        self.window_len
    }

    pub fn skip_len(&self) -> u32 {
        self.skip_len
    }

    pub fn min_weight(&self) -> u32 {
        self.min_weight
    }

    /// True when the window length is a whole number of skip blocks.
    pub fn aligned(&self) -> bool {
        self.window_len % self.skip_len == 0
    }

    /// Number of `J`-bit blocks per window; defined only when aligned.
    pub fn blocks(&self) -> Option<u32> {
        self.aligned().then(|| self.window_len / self.skip_len)
    }

    /// Like [`blocks`](Self::blocks) but failing with [`Error::NotAligned`].
    pub fn blocks_or_err(&self) -> Result<u32> {
        self.blocks().ok_or(Error::NotAligned {
            window_len: self.window_len,
            skip_len: self.skip_len,
        })
    }

    /// The admissible length `L + kJ`.
    pub fn length_at(&self, k: u64) -> u64 {
        u64::from(self.window_len) + k * u64::from(self.skip_len)
    }

    /// Inverse of [`length_at`](Self::length_at): `Some(k)` iff `n = L + kJ`.
    pub fn k_of(&self, n: u64) -> Option<u64> {
        let l = u64::from(self.window_len);
        let j = u64::from(self.skip_len);
        if n < l || (n - l) % j != 0 {
            return None;
        }
        Some((n - l) / j)
    }
}

impl std::fmt::Display for SswParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.window_len, self.skip_len, self.min_weight)
    }
}

/// The admissible lengths `{L + kJ : 0 <= k <= k_max}`.
#[derive(Debug, Clone, Copy)]
pub struct LengthGrid {
    pub params: SswParams,
    pub k_max: u64,
}

impl LengthGrid {
    pub fn new(params: SswParams, k_max: u64) -> Self {
        Self { params, k_max }
    }

    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.k_max).map(move |k| self.params.length_at(k))
    }

    pub fn contains(&self, n: u64) -> bool {
        matches!(self.params.k_of(n), Some(k) if k <= self.k_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_triples() {
        let p = SswParams::new(3, 2, 2).unwrap();
        assert_eq!(p.window_len(), 3);
        assert!(!p.aligned());
        assert!(SswParams::new(4, 2, 2).unwrap().aligned());
        assert_eq!(SswParams::new(6, 2, 3).unwrap().blocks(), Some(3));
    }

    #[test]
    fn rejects_skip_longer_than_window() {
        assert!(matches!(SswParams::new(2, 3, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn rejects_weight_above_window() {
        assert!(matches!(SswParams::new(4, 2, 5), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn rejects_zero_skip() {
        assert!(matches!(SswParams::new(4, 0, 2), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn length_grid_round_trips() {
        let p = SswParams::new(3, 2, 2).unwrap();
        assert_eq!(p.length_at(1), 5);
        assert_eq!(p.k_of(5), Some(1));
        assert_eq!(p.k_of(4), None);
        assert_eq!(p.k_of(2), None);
        let grid = LengthGrid::new(p, 3);
        assert_eq!(grid.lengths().collect::<Vec<_>>(), vec![3, 5, 7, 9]);
        assert!(grid.contains(7));
        assert!(!grid.contains(6));
        assert!(!grid.contains(11));
    }
}
