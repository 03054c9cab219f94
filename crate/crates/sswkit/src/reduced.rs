//! Refined enumeration for aligned parameters (`L = lJ`): full windows are
//! grouped by the Hamming weights of their last `l-1` blocks, shrinking the
//! FSM to at most `min{J+1, W+1}^(l-1)` states, and the same grouping powers
//! a refined Goulden-Jackson system with at most `min{J+1, W}^(l-1)`
//! unknowns.
//!
//! Two states whose last `l-1` block weights agree admit exactly the same
//! appended blocks, so the grouping is lossless. Block weights are tracked
//! exactly up to `cap = min{J, W}`; when `W < J` the top class absorbs all
//! weights in `W..=J`, which changes no feasibility decision (any such block
//! already satisfies a window on its own) and keeps the state bound. Class
//! multiplicities are the matching binomial sums, reducing to the plain
//! binomials whenever `W >= J`.

use std::collections::HashMap;

use num::{BigInt, BigUint, Zero};

use crate::combin::{binomial, binomial_sum, ones};
use crate::error::Result;
use crate::matrix::SparseMatrix;
use crate::params::SswParams;
use crate::series::{CountSeries, Method};

/// Weight-vector FSM: states are length `l-1` block-weight classes, edges
/// carry the number of appended blocks realizing the new class, and
/// `initial_counts` holds the number of valid windows per state.
#[derive(Debug, Clone)]
pub struct ReducedFsm {
    params: SswParams,
    cap: u32,
    states: Vec<Vec<u32>>,
    matrix: SparseMatrix,
    initial_counts: Vec<BigUint>,
}

impl ReducedFsm {
    pub fn params(&self) -> &SswParams {
        &self.params
    }

    /// Largest tracked weight class, `min{J, W}`.
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<u32>] {
        &self.states
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn initial_counts(&self) -> &[BigUint] {
        &self.initial_counts
    }

    /// Weight tuple rendered as `(w1,w2,...)`; `()` for the single-state
    /// SEC case.
    pub fn state_label(&self, i: usize) -> String {
        let parts: Vec<String> = self.states[i].iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.state_label(i)).collect()
    }
}

/// Number of appended blocks realizing weight class `c` under `cap`.
fn class_multiplicity(skip_len: u32, cap: u32, c: u32) -> BigUint {
    if c < cap {
        binomial(skip_len, c)
    } else {
        binomial_sum(skip_len, cap, skip_len)
    }
}

/// All weight-class vectors of the given length with entries `0..=cap` and
/// sum at least `min_sum`, in lexicographic order.
fn weight_vectors(len: usize, cap: u32, min_sum: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    loop {
        if current.iter().sum::<u32>() >= min_sum {
            out.push(current.clone());
        }
        // odometer increment from the rightmost position
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < cap {
                current[pos] += 1;
                for entry in current.iter_mut().skip(pos + 1) {
                    *entry = 0;
                }
                break;
            }
        }
    }
}

/// Builds the weight-vector FSM of an aligned parameter set.
pub fn build_reduced(params: &SswParams) -> Result<ReducedFsm> {
    let blocks = params.blocks_or_err()?;
    let j = params.skip_len();
    let w = params.min_weight();
    let cap = j.min(w);

    let states = weight_vectors(blocks as usize - 1, cap, w.saturating_sub(j));
    let index: HashMap<&[u32], usize> =
        states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();

    let mult: Vec<BigUint> = (0..=cap).map(|c| class_multiplicity(j, cap, c)).collect();

    let mut initial_counts = Vec::with_capacity(states.len());
    for state in &states {
        let sum: u32 = state.iter().sum();
        let mut v: BigUint = state.iter().map(|&c| &mult[c as usize]).product();
        v *= binomial_sum(j, w.saturating_sub(sum), j);
        initial_counts.push(v);
    }

    let mut matrix = SparseMatrix::new(states.len());
    for (i, state) in states.iter().enumerate() {
        let sum: u32 = state.iter().sum();
        for c in 0..=cap {
            // a fresh block of class c keeps the window valid iff the last
            // l-1 block weights plus c reach W
            if sum + c < w {
                continue;
            }
            let col = if state.is_empty() {
                // SEC case: the single state loops onto itself
                i
            } else {
                let mut next = Vec::with_capacity(state.len());
                next.extend_from_slice(&state[1..]);
                next.push(c);
                *index.get(next.as_slice()).expect("shifted state stays in the state set")
            };
            matrix.push_entry(i, col, mult[c as usize].clone());
        }
    }

    Ok(ReducedFsm { params: *params, cap, states, matrix, initial_counts })
}

/// Counts codewords at `L, L+J, ..., L+k_max*J` from a built reduced FSM:
/// the count at `kJ` is `v^T A^(k-l) 1` with `v` the per-state window
/// counts.
pub fn count_reduced_from(fsm: &ReducedFsm, k_max: u64) -> CountSeries {
    let mut series = CountSeries::new(*fsm.params(), Method::Reduced);
    let mut u = ones(fsm.len());
    for k in 0..=k_max {
        let total = fsm
            .initial_counts
            .iter()
            .zip(&u)
            .map(|(v, u)| v * u)
            .sum();
        series.insert(fsm.params.length_at(k), total);
        if k < k_max {
            u = fsm.matrix.mat_vec(&u);
        }
    }
    series
}

pub fn count_reduced(params: &SswParams, k_max: u64) -> Result<CountSeries> {
    Ok(count_reduced_from(&build_reduced(params)?, k_max))
}

/// Refined Goulden-Jackson system over block-weight profiles: bad windows
/// are grouped by the weights of their last `l-1` blocks, giving at most
/// `min{J+1, W}^(l-1)` unknowns with binomial coefficients.
pub fn refined_gj_series(params: &SswParams, k_max: u64) -> Result<CountSeries> {
    let blocks = params.blocks_or_err()? as usize;
    let j = params.skip_len();
    let w = params.min_weight();
    let order = blocks + k_max as usize;

    if w == 0 {
        // no bad words at all
        let cluster = vec![BigInt::zero(); order + 1];
        return crate::cluster::assemble_gj_counts(params, Method::RefinedGj, &cluster, k_max);
    }

    let vmax = j.min(w - 1);
    let profiles: Vec<Vec<u32>> = weight_vectors(blocks - 1, vmax, 0)
        .into_iter()
        .filter(|p| p.iter().sum::<u32>() < w)
        .collect();

    let binom_cache: Vec<BigInt> = (0..=j).map(|c| BigInt::from(binomial(j, c))).collect();

    // head[t]: number of binary bad words whose last l-1 block weights
    // realize profile t (the first block ranges over all weights keeping
    // the window bad).
    let mut heads = Vec::with_capacity(profiles.len());
    for profile in &profiles {
        let sum: u32 = profile.iter().sum();
        let mut head: BigInt = profile.iter().map(|&c| &binom_cache[c as usize]).product();
        head *= BigInt::from(binomial_sum(j, 0, w - 1 - sum));
        heads.push(head);
    }

    // couplings[t]: (source profile, overlap depth o, block multiplicity of
    // the l-o fresh blocks). The overlapped prefix of the new word is part
    // of the source word, so only the fresh blocks contribute binomials.
    let mut couplings: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); profiles.len()];
    for o in 1..blocks {
        let mut by_suffix: HashMap<&[u32], Vec<usize>> = HashMap::new();
        for (p, profile) in profiles.iter().enumerate() {
            by_suffix.entry(&profile[blocks - 1 - o..]).or_default().push(p);
        }
        for (t, profile) in profiles.iter().enumerate() {
            let sum: u32 = profile.iter().sum();
            let fresh: BigInt = profile[o - 1..].iter().map(|&c| &binom_cache[c as usize]).product();
            // the new word's first block weight i sits inside the overlap:
            // source profiles must end with (i, w_1, ..., w_(o-1))
            for i in 0..=vmax.min(w - 1 - sum) {
                let mut pattern = Vec::with_capacity(o);
                pattern.push(i);
                pattern.extend_from_slice(&profile[..o - 1]);
                if let Some(sources) = by_suffix.get(pattern.as_slice()) {
                    for &p in sources {
                        couplings[t].push((p, o, fresh.clone()));
                    }
                }
            }
        }
    }

    let mut coeffs: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); order + 1]; profiles.len()];
    for degree in blocks..=order {
        for t in 0..profiles.len() {
            let mut c = if degree == blocks { -heads[t].clone() } else { BigInt::zero() };
            for (p, o, fresh) in &couplings[t] {
                let prior = &coeffs[*p][degree - (blocks - o)];
                if !prior.is_zero() {
                    c -= fresh * prior;
                }
            }
            coeffs[t][degree] = c;
        }
    }

    let mut cluster_total = vec![BigInt::zero(); order + 1];
    for row in &coeffs {
        for (d, c) in row.iter().enumerate() {
            cluster_total[d] += c;
        }
    }

    crate::cluster::assemble_gj_counts(params, Method::RefinedGj, &cluster_total, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::valid_window_count;
    use crate::error::Error;
    use crate::fsm::count_fsm;
    use crate::oracle::brute_force_count;

    fn params(l: u32, j: u32, w: u32) -> SswParams {
        SswParams::new(l, j, w).unwrap()
    }

    #[test]
    fn reduced_423_matches_figure() {
        let fsm = build_reduced(&params(4, 2, 3)).unwrap();
        assert_eq!(fsm.states(), &[vec![1], vec![2]]);
        assert_eq!(
            fsm.initial_counts(),
            &[BigUint::from(2u32), BigUint::from(3u32)]
        );
        // edges: (1)->(2) weight 1; (2)->(1) weight 2, (2)->(2) weight 1
        assert_eq!(
            fsm.matrix().dump(&fsm.labels()),
            "(1) (2) 1\n(2) (1) 2\n(2) (2) 1\n"
        );
    }

    #[test]
    fn counts_match_hand_derived_values() {
        let series = count_reduced(&params(4, 2, 3), 2).unwrap();
        assert_eq!(series.count_at(4), Some(BigUint::from(5u32)));
        assert_eq!(series.count_at(6), Some(BigUint::from(11u32)));
        assert_eq!(series.count_at(8), Some(BigUint::from(21u32)));

        // single-window count at n = L
        let series = count_reduced(&params(6, 2, 3), 0).unwrap();
        assert_eq!(series.count_at(6), Some(BigUint::from(42u32)));
    }

    #[test]
    fn sec_case_is_single_state() {
        let fsm = build_reduced(&params(4, 4, 2)).unwrap();
        assert_eq!(fsm.len(), 1);
        assert_eq!(fsm.state_label(0), "()");
        let m = fsm.initial_counts()[0].clone();
        assert_eq!(m, BigUint::from(11u32));
        assert_eq!(fsm.matrix().entry(0, 0), m);
        // SEC counts are powers of the per-block count
        let series = count_reduced_from(&fsm, 2);
        assert_eq!(series.count_at(8), Some(BigUint::from(121u32)));
        assert_eq!(series.count_at(12), Some(BigUint::from(1331u32)));
    }

    #[test]
    fn zero_weight_has_one_state() {
        let fsm = build_reduced(&params(6, 2, 0)).unwrap();
        assert_eq!(fsm.len(), 1);
        assert_eq!(fsm.initial_counts()[0], BigUint::from(64u32));
    }

    #[test]
    fn state_count_bound_and_window_total() {
        for (l, j, w) in [(4, 2, 1), (4, 2, 3), (6, 2, 3), (6, 3, 4), (8, 2, 5), (8, 4, 2)] {
            let p = params(l, j, w);
            let fsm = build_reduced(&p).unwrap();
            let blocks = p.blocks().unwrap();
            let bound = (u64::from(j.min(w)) + 1).pow(blocks - 1);
            assert!(fsm.len() as u64 <= bound, "({l},{j},{w}): {} > {bound}", fsm.len());
            let total: BigUint = fsm.initial_counts().iter().sum();
            assert_eq!(total, valid_window_count(l, w), "({l},{j},{w})");
        }
    }

    #[test]
    fn forty_twenty_twenty_stays_small() {
        let fsm = build_reduced(&params(40, 20, 20)).unwrap();
        assert!(fsm.len() <= 21);
    }

    #[test]
    fn matches_fsm_counts() {
        for (l, j, w) in [(4, 2, 1), (4, 2, 2), (6, 2, 3), (6, 3, 2), (8, 2, 7), (5, 1, 3)] {
            let p = params(l, j, w);
            let reduced = count_reduced(&p, 5).unwrap();
            let full = count_fsm(&p, 5).unwrap();
            for k in 0..=5u64 {
                let n = p.length_at(k);
                assert_eq!(reduced.count_at(n), full.count_at(n), "({l},{j},{w}) n={n}");
            }
        }
    }

    #[test]
    fn refined_gj_matches_reduced_and_oracle() {
        for (l, j, w) in [(4, 2, 3), (4, 2, 1), (6, 2, 3), (6, 3, 2), (4, 4, 3), (6, 2, 0)] {
            let p = params(l, j, w);
            let rgj = refined_gj_series(&p, 4).unwrap();
            let red = count_reduced(&p, 4).unwrap();
            for k in 0..=4u64 {
                let n = p.length_at(k);
                assert_eq!(rgj.count_at(n), red.count_at(n), "({l},{j},{w}) n={n}");
                if n <= 16 {
                    assert_eq!(
                        rgj.count_at(n).unwrap(),
                        brute_force_count(&p, n).unwrap(),
                        "({l},{j},{w}) n={n} vs oracle"
                    );
                }
            }
        }
    }

    #[test]
    fn refined_gj_unknown_counts() {
        // (4,2,3): V = {0,1,2}, three profiles
        let p = params(4, 2, 3);
        let vmax = p.skip_len().min(p.min_weight() - 1);
        assert_eq!(vmax, 2);
        // (40,20,20): profile entries run 0..=19, so at most 20 unknowns
        let profiles = weight_vectors(1, 19, 0)
            .into_iter()
            .filter(|pr| pr.iter().sum::<u32>() < 20)
            .count();
        assert_eq!(profiles, 20);
    }

    #[test]
    fn rejects_unaligned() {
        assert!(matches!(build_reduced(&params(3, 2, 2)), Err(Error::NotAligned { .. })));
        assert!(matches!(refined_gj_series(&params(3, 2, 2), 1), Err(Error::NotAligned { .. })));
    }
}
