//! Bit strings and the binary <-> 2^J-ary block transform.

use crate::error::{Error, Result};
use crate::params::SswParams;

/// A finite binary sequence. Position 1 is the leftmost, first-transmitted
/// bit; all window offsets follow that convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a string of `'0'` and `'1'` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::InvalidParams(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(Self { bits })
    }

    /// The low `len` bits of `value`, most significant bit first.
    pub fn from_value(value: u64, len: u32) -> Self {
        let bits = (0..len).rev().map(|i| (value >> i) & 1 == 1).collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of ones.
    pub fn weight(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// Bit at zero-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    /// Weight of the window `[start, start + len)`, zero-based.
    pub fn window_weight(&self, start: usize, len: usize) -> u64 {
        self.bits[start..start + len].iter().filter(|&&b| b).count() as u64
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl std::str::FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Groups the bits of `b` into `J`-bit blocks and reads each block as the
/// integer whose length-`J` binary representation it is, e.g. `0101` with
/// `J = 4` becomes `5`.
///
/// Requires aligned parameters (`L` a multiple of `J`) and a bit length
/// divisible by `J`.
pub fn to_qary(b: &BitString, params: &SswParams) -> Result<Vec<u64>> {
    params.blocks_or_err()?;
    let j = params.skip_len() as usize;
    if b.len() % j != 0 {
        return Err(Error::BadLength { len: b.len(), skip_len: params.skip_len() });
    }
    let mut symbols = Vec::with_capacity(b.len() / j);
    for chunk in b.bits().chunks(j) {
        let mut v = 0u64;
        for &bit in chunk {
            v = (v << 1) | u64::from(bit);
        }
        symbols.push(v);
    }
    Ok(symbols)
}

/// Inverse of [`to_qary`]: expands each symbol back into `skip_len` bits.
pub fn from_qary(symbols: &[u64], skip_len: u32) -> Result<BitString> {
    if skip_len == 0 || skip_len > 63 {
        return Err(Error::InvalidParams(format!("unsupported block width {skip_len}")));
    }
    let mut bits = Vec::with_capacity(symbols.len() * skip_len as usize);
    for &s in symbols {
        if s >= 1u64 << skip_len {
            return Err(Error::InvalidParams(format!(
                "symbol {s} does not fit in {skip_len} bits"
            )));
        }
        for i in (0..skip_len).rev() {
            bits.push((s >> i) & 1 == 1);
        }
    }
    Ok(BitString::new(bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let b = BitString::parse("01101").unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(b.weight(), 3);
        assert_eq!(b.to_string(), "01101");
        assert!(BitString::parse("01x").is_err());
    }

    #[test]
    fn window_weights() {
        let b = BitString::parse("01101").unwrap();
        assert_eq!(b.window_weight(0, 3), 2);
        assert_eq!(b.window_weight(2, 3), 2);
    }

    #[test]
    fn qary_follows_binary_representation() {
        // (5)_4 = 0101
        let p = SswParams::new(4, 4, 2).unwrap();
        let b = BitString::parse("0101").unwrap();
        assert_eq!(to_qary(&b, &p).unwrap(), vec![5]);

        let zeros = BitString::from_value(0, 4);
        assert_eq!(to_qary(&zeros, &p).unwrap(), vec![0]);
    }

    #[test]
    fn qary_round_trips() {
        let p = SswParams::new(4, 2, 2).unwrap();
        let b = BitString::parse("011011").unwrap();
        let symbols = to_qary(&b, &p).unwrap();
        assert_eq!(symbols, vec![1, 2, 3]);
        assert_eq!(from_qary(&symbols, 2).unwrap(), b);
    }

    #[test]
    fn qary_rejects_misaligned_inputs() {
        let p = SswParams::new(3, 2, 2).unwrap();
        let b = BitString::parse("0110").unwrap();
        assert!(matches!(to_qary(&b, &p), Err(Error::NotAligned { .. })));

        let p = SswParams::new(4, 2, 2).unwrap();
        let b = BitString::parse("011").unwrap();
        assert!(matches!(to_qary(&b, &p), Err(Error::BadLength { .. })));
    }
}
