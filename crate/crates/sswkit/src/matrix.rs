//! Sparse nonnegative integer matrices with exact arithmetic.
//!
//! The same type backs the de Bruijn skip matrix (0/1 entries) and the
//! reduced weight-vector FSM (binomial entries), so entries are arbitrary
//! precision throughout.

use num::{BigUint, Zero};

/// Row-major sparse matrix over nonnegative big integers. Absent entries are
/// zero; stored entries are always positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, BigUint)>>,
}

impl SparseMatrix {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Appends an entry to `row`; columns must be pushed in ascending order
    /// and values must be positive.
    pub fn push_entry(&mut self, row: usize, col: usize, value: BigUint) {
        debug_assert!(!value.is_zero(), "zero entries are represented by absence");
        debug_assert!(self.rows[row].last().map_or(true, |(c, _)| *c < col));
        self.rows[row].push((col, value));
    }

    pub fn row(&self, i: usize) -> &[(usize, BigUint)] {
        &self.rows[i]
    }

    pub fn entry(&self, row: usize, col: usize) -> BigUint {
        self.rows[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|idx| self.rows[row][idx].1.clone())
            .unwrap_or_else(|_| BigUint::ZERO)
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `y = M v` with exact arithmetic.
    pub fn mat_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(v.len(), self.dim);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigUint::ZERO;
                for (col, value) in row {
                    acc += value * &v[*col];
                }
                acc
            })
            .collect()
    }

    pub fn row_sums(&self) -> Vec<BigUint> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(_, v)| v).sum())
            .collect()
    }

    /// The grand sum `1^T M 1`.
    pub fn grand_sum(&self) -> BigUint {
        self.row_sums().iter().sum()
    }

    /// Floating-point copy of the rows, for spectral iteration only.
    pub fn to_f64_rows(&self) -> Vec<Vec<(usize, f64)>> {
        use num::ToPrimitive;
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, v.to_f64().unwrap_or(f64::INFINITY)))
                    .collect()
            })
            .collect()
    }

    /// Text dump, one line `row_state col_state entry` per nonzero, rows in
    /// canonical order and columns ascending within each row.
    pub fn dump<S: AsRef<str>>(&self, labels: &[S]) -> String {
        assert_eq!(labels.len(), self.dim);
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (col, value) in row {
                out.push_str(labels[i].as_ref());
                out.push(' ');
                out.push_str(labels[*col].as_ref());
                out.push(' ');
                out.push_str(&value.to_string());
                out.push('\n');
            }
        }
        out
    }

    /// Sizes of the strongly connected components of the nonzero-pattern
    /// digraph, largest first (iterative Tarjan).
    pub fn scc_sizes(&self) -> Vec<usize> {
        if self.dim == 0 {
            return Vec::new();
        }
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; self.dim];
        let mut lowlink = vec![0usize; self.dim];
        let mut on_stack = vec![false; self.dim];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut sizes = Vec::new();

        // Explicit DFS stack of (node, next edge position).
        let mut call_stack: Vec<(usize, usize)> = Vec::new();
        for root in 0..self.dim {
            if index[root] != UNSEEN {
                continue;
            }
            call_stack.push((root, 0));
            index[root] = next_index;
            lowlink[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut edge_pos)) = call_stack.last_mut() {
                if *edge_pos < self.rows[v].len() {
                    let w = self.rows[v][*edge_pos].0;
                    *edge_pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        lowlink[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call_stack.push((w, 0));
                    } else if on_stack[w] {
                        lowlink[v] = lowlink[v].min(index[w]);
                    }
                } else {
                    call_stack.pop();
                    if let Some(&(parent, _)) = call_stack.last() {
                        lowlink[parent] = lowlink[parent].min(lowlink[v]);
                    }
                    if lowlink[v] == index[v] {
                        let mut size = 0;
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            size += 1;
                            if w == v {
                                break;
                            }
                        }
                        sizes.push(size);
                    }
                }
            }
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Outcome of the strong-connectivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible { component_sizes: Vec<usize> },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}
