//! The finite state machine of a skip-sliding window code: states are the
//! weight-filtered order-`L` de Bruijn vertices and one transition appends
//! `J` fresh bits.
//!
//! The transition matrix is the masked matrix power of the de Bruijn
//! adjacency matrix, but it is built directly in the filtered state space
//! (append `J` bits per state, keep valid targets) rather than by powering
//! the full `2^L`-state matrix.

use std::collections::HashMap;

use num::BigUint;

use crate::combin::{self, valid_window_count};
use crate::error::{Error, Result};
use crate::matrix::{Irreducibility, SparseMatrix};
use crate::params::SswParams;
use crate::series::{CountSeries, Method};

/// Default ceiling on the number of FSM states.
pub const DEFAULT_STATE_LIMIT: usize = 1 << 20;

/// The ordered set of `L`-bit states with weight at least `W`.
///
/// States are sorted ascending by the integer value of the bit string
/// (first-transmitted bit most significant), so every derived vector and
/// matrix is bit-reproducible across runs.
#[derive(Debug, Clone)]
pub struct StateSpace {
    params: SswParams,
    states: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl StateSpace {
    pub fn params(&self) -> &SswParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn state(&self, i: usize) -> u64 {
        self.states[i]
    }

    pub fn index_of(&self, state: u64) -> Option<usize> {
        self.index.get(&state).copied()
    }

    /// The state rendered as an `L`-bit binary string.
    pub fn label(&self, i: usize) -> String {
        let l = self.params.window_len() as usize;
        format!("{:0>width$b}", self.states[i], width = l)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }
}

/// Builds the skip transition matrix with the default state limit.
pub fn build_skip_matrix(params: &SswParams) -> Result<(StateSpace, SparseMatrix)> {
    build_skip_matrix_with_limit(params, DEFAULT_STATE_LIMIT)
}

/// Builds the FSM of the `(L, J, W)` constraint: entry `(s, s')` is 1 iff
/// `s'` is the last `L-J` bits of `s` followed by some `J`-bit block and
/// `weight(s') >= W`.
pub fn build_skip_matrix_with_limit(
    params: &SswParams,
    state_limit: usize,
) -> Result<(StateSpace, SparseMatrix)> {
    let l = params.window_len();
    let j = params.skip_len();
    let w = params.min_weight();
    let state_count = valid_window_count(l, w);
    if l > 63 || state_count > BigUint::from(state_limit) {
        return Err(Error::StateLimitExceeded { states: state_count, limit: state_limit });
    }

    let states = combin::bit_patterns_at_least(l, w);
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let dim = states.len();
    let mut matrix = SparseMatrix::new(dim);

    let keep_mask = if l == j { 0 } else { (1u64 << (l - j)) - 1 };
    for (i, &s) in states.iter().enumerate() {
        // Successors form the contiguous value range prefix..prefix + 2^J,
        // so the sorted state list is sliced instead of scanning 2^J blocks.
        let prefix = (s & keep_mask) << j;
        let lo = states.partition_point(|&t| t < prefix);
        let hi = states.partition_point(|&t| t < prefix + (1u64 << j));
        for col in lo..hi {
            matrix.push_entry(i, col, BigUint::from(1u32));
        }
    }

    Ok((StateSpace { params: *params, states, index }, matrix))
}

/// Counts codewords at lengths `L, L+J, ..., L+k_max*J` by repeated exact
/// matrix-vector products: the count at `L + kJ` is the grand sum of the
/// `k`-th matrix power.
pub fn count_fsm(params: &SswParams, k_max: u64) -> Result<CountSeries> {
    count_fsm_with_limit(params, k_max, DEFAULT_STATE_LIMIT)
}

pub fn count_fsm_with_limit(
    params: &SswParams,
    k_max: u64,
    state_limit: usize,
) -> Result<CountSeries> {
    let (_, matrix) = build_skip_matrix_with_limit(params, state_limit)?;
    Ok(count_series_from_matrix(params, &matrix, Method::Fsm, k_max))
}

/// Counting core shared with callers that pre-build (or deliberately
/// perturb) the matrix.
pub fn count_series_from_matrix(
    params: &SswParams,
    matrix: &SparseMatrix,
    method: Method,
    k_max: u64,
) -> CountSeries {
    let mut series = CountSeries::new(*params, method);
    let mut v = combin::ones(matrix.dim());
    for k in 0..=k_max {
        series.insert(params.length_at(k), v.iter().sum());
        if k < k_max {
            v = matrix.mat_vec(&v);
        }
    }
    series
}

/// Strong-connectivity analysis of the transition digraph.
pub fn check_irreducible(matrix: &SparseMatrix) -> Irreducibility {
    let sizes = matrix.scc_sizes();
    if sizes.len() <= 1 {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Reducible { component_sizes: sizes }
    }
}
