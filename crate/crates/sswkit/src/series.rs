//! Truncated formal power series over exact rationals, and the count series
//! every enumeration method produces.

use std::collections::BTreeMap;

use num::{BigRational, BigUint, Zero};

use crate::error::{Error, Result};
use crate::params::SswParams;

/// Formal power series truncated after `x^order`, with exact rational
/// coefficients. All arithmetic is exact modulo `x^(order+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &BigRational {
        &self.coeffs[degree]
    }

    pub fn set_coeff(&mut self, degree: usize, value: BigRational) {
        self.coeffs[degree] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let n = self.coeffs.len();
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse modulo `x^(order+1)`; requires a nonzero
    /// constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Internal(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        let n = self.coeffs.len();
        let mut inv = vec![BigRational::zero(); n];
        inv[0] = self.coeffs[0].recip();
        for k in 1..n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !inv[k - i].is_zero() {
                    acc += &self.coeffs[i] * &inv[k - i];
                }
            }
            inv[k] = -(acc / &self.coeffs[0]);
        }
        Ok(Self { coeffs: inv })
    }
}

/// Counting method tags, shared by the library and the CLI selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Fsm,
    GjBad,
    Reduced,
    RefinedGj,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Oracle, Method::Fsm, Method::GjBad, Method::Reduced, Method::RefinedGj];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Fsm => "fsm",
            Method::GjBad => "gj",
            Method::Reduced => "reduced",
            Method::RefinedGj => "rgj",
        }
    }

    /// Methods that require `L` to be a multiple of `J`.
    pub fn needs_alignment(&self) -> bool {
        matches!(self, Method::GjBad | Method::Reduced | Method::RefinedGj)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "fsm" => Ok(Method::Fsm),
            "gj" => Ok(Method::GjBad),
            "reduced" => Ok(Method::Reduced),
            "rgj" => Ok(Method::RefinedGj),
            other => Err(Error::InvalidParams(format!("unknown method {other:?}"))),
        }
    }
}

/// Exact codeword counts indexed by length. Lengths off the `L + kJ` grid
/// count zero by convention; on-grid lengths beyond the computed horizon are
/// reported as unknown (`None`).
#[derive(Debug, Clone)]
pub struct CountSeries {
    params: SswParams,
    method: Method,
    counts: BTreeMap<u64, BigUint>,
}

impl CountSeries {
    pub fn new(params: SswParams, method: Method) -> Self {
        Self { params, method, counts: BTreeMap::new() }
    }

    pub fn params(&self) -> &SswParams {
        &self.params
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn insert(&mut self, n: u64, count: BigUint) {
        debug_assert!(self.params.k_of(n).is_some(), "count at off-grid length {n}");
        self.counts.insert(n, count);
    }

    /// Exact count at length `n`: `Some(0)` off the grid, the stored value on
    /// the computed grid, `None` past the computed horizon.
    pub fn count_at(&self, n: u64) -> Option<BigUint> {
        if self.params.k_of(n).is_none() {
            return Some(BigUint::ZERO);
        }
        self.counts.get(&n).cloned()
    }

    /// On-grid count by `k` index (`n = L + kJ`).
    pub fn count_at_k(&self, k: u64) -> Option<BigUint> {
        self.counts.get(&self.params.length_at(k)).cloned()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts.iter().map(|(n, c)| (*n, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}
