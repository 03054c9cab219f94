//! Dominant eigenvalues, noiseless capacity, finite-length rates and the
//! Kozyakin convergence bound.
//!
//! Capacity is `log2(lambda) / J` where `lambda` is the dominant eigenvalue
//! of the chosen transition matrix. Power iteration runs on the shifted
//! matrix `M + I` (nonnegative matrices can be periodic; the shift makes the
//! dominant eigenvalue simple) from the uniform positive start.

use num::BigUint;

use crate::combin::ones;
use crate::error::{Error, Result};
use crate::fsm::{build_skip_matrix, check_irreducible};
use crate::matrix::SparseMatrix;
use crate::params::SswParams;
use crate::reduced::{build_reduced, count_reduced};
use crate::series::Method;

/// Default residual tolerance for the power iteration.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
/// Iteration cap before reporting non-convergence.
pub const MAX_POWER_ITERATIONS: u64 = 1_000_000;
/// Largest matrix dimension accepted by [`convergence_bound`].
pub const MAX_BOUND_DIM: usize = 64;

/// Noiseless capacity in bits per transmitted bit, together with the
/// eigenvalue it came from and the iteration residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    pub value: f64,
    pub method: Method,
    pub lambda: f64,
    pub residual: f64,
    /// True when the transition digraph is not strongly connected; the value
    /// is then the Perron root of the dominant component.
    pub reducible: bool,
}

/// Finite-length rate `log2(M(n)) / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub n: u64,
    pub rate: f64,
}

/// Dominant eigenvalue of a nonnegative matrix by power iteration on
/// `M + I`, returning `(lambda, residual)` where the residual is
/// `max|Mx - lambda x|` for the final iterate `x` scaled to unit max norm.
pub fn dominant_eigenvalue(matrix: &SparseMatrix, tol: f64) -> Result<(f64, f64)> {
    assert!(tol > 0.0, "tolerance must be positive");
    let dim = matrix.dim();
    if dim == 0 {
        return Err(Error::Internal("eigenvalue of an empty matrix".into()));
    }
    let rows = matrix.to_f64_rows();
    let mut x = vec![1.0f64; dim];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_POWER_ITERATIONS {
        let mut mx = vec![0.0f64; dim];
        for (i, row) in rows.iter().enumerate() {
            let mut acc = 0.0;
            for &(col, value) in row {
                acc += value * x[col];
            }
            mx[i] = acc;
        }
        // Rayleigh quotient of the unshifted matrix
        let num: f64 = x.iter().zip(&mx).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        lambda = num / den;
        residual = x
            .iter()
            .zip(&mx)
            .map(|(a, b)| (b - lambda * a).abs())
            .fold(0.0, f64::max);
        if residual <= tol * lambda.abs().max(1.0) {
            return Ok((lambda, residual));
        }
        // shifted step keeps periodic matrices converging
        let mut norm = 0.0f64;
        for i in 0..dim {
            x[i] += mx[i];
            norm = norm.max(x[i].abs());
        }
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NoConvergence { lambda, residual });
        }
        for v in &mut x {
            *v /= norm;
        }
    }
    Err(Error::NoConvergence { lambda, residual })
}

/// The transition matrix a capacity method works on.
fn method_matrix(params: &SswParams, method: Method) -> Result<SparseMatrix> {
    match method {
        Method::Fsm => Ok(build_skip_matrix(params)?.1),
        Method::Reduced => Ok(build_reduced(params)?.matrix().clone()),
        other => Err(Error::InvalidParams(format!(
            "method {other} does not define a transition matrix"
        ))),
    }
}

/// Noiseless capacity `log2(lambda)/J` from the chosen method's matrix.
pub fn capacity(params: &SswParams, method: Method) -> Result<CapacityEstimate> {
    capacity_with_tol(params, method, DEFAULT_EIGEN_TOL)
}

pub fn capacity_with_tol(params: &SswParams, method: Method, tol: f64) -> Result<CapacityEstimate> {
    let matrix = method_matrix(params, method)?;
    let (lambda, residual) = dominant_eigenvalue(&matrix, tol)?;
    let reducible = !check_irreducible(&matrix).is_irreducible();
    Ok(CapacityEstimate {
        value: lambda.log2() / f64::from(params.skip_len()),
        method,
        lambda,
        residual,
        reducible,
    })
}

/// Picks the cheaper of the two matrix methods: the reduced FSM when the
/// parameters are aligned and its state bound does not exceed the full
/// FSM's, the full FSM otherwise.
pub fn auto_method(params: &SswParams) -> Method {
    if let Some(blocks) = params.blocks() {
        let reduced_bound = BigUint::from(
            u64::from(params.skip_len().min(params.min_weight()) + 1),
        )
        .pow(blocks - 1);
        let fsm_bound =
            crate::combin::valid_window_count(params.window_len(), params.min_weight());
        if reduced_bound <= fsm_bound {
            return Method::Reduced;
        }
    }
    Method::Fsm
}

/// Capacity via [`auto_method`].
pub fn capacity_auto(params: &SswParams) -> Result<CapacityEstimate> {
    capacity(params, auto_method(params))
}

/// Base-2 logarithm of a positive big integer with relative error below
/// 1e-12: the bit length anchors the integer part and the top 53 bits give
/// the mantissa.
pub fn log2_biguint(value: &BigUint) -> f64 {
    use num::ToPrimitive;
    let bits = value.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return value.to_f64().expect("fits f64").log2();
    }
    let shift = bits - 53;
    let top = (value >> shift).to_f64().expect("53 bits fit f64");
    top.log2() + shift as f64
}

/// Finite-length rate at `n` using the exact count from `method`.
pub fn finite_rate(params: &SswParams, n: u64, method: Method) -> Result<RatePoint> {
    let count = match method {
        Method::Fsm => {
            let k = params.k_of(n).ok_or(Error::EmptyCode { n })?;
            crate::fsm::count_fsm(params, k)?
                .count_at(n)
                .expect("computed up to n")
        }
        Method::Reduced => {
            let k = params.k_of(n).ok_or(Error::EmptyCode { n })?;
            count_reduced(params, k)?.count_at(n).expect("computed up to n")
        }
        other => {
            return Err(Error::InvalidParams(format!(
                "method {other} is not a rate back end"
            )))
        }
    };
    rate_from_count(n, &count)
}

/// Rate `log2(M)/n` from an exact count.
pub fn rate_from_count(n: u64, count: &BigUint) -> Result<RatePoint> {
    if count == &BigUint::ZERO {
        return Err(Error::EmptyCode { n });
    }
    Ok(RatePoint { n, rate: log2_biguint(count) / n as f64 })
}

/// Additive gap bound of the rate over the capacity at length `L + kJ`:
/// `sigma_b(k)/(kJ) * log2(2^b - 1) + nu_b(k)/(kJ) * log2((1^T B 1)^b / (1^T B^b 1))`
/// where `b` is the matrix dimension. The observed `rate - capacity` never
/// exceeds it.
pub fn convergence_bound(params: &SswParams, k: u64) -> Result<f64> {
    assert!(k > 0, "bound defined for k > 0");
    let (_, matrix) = build_skip_matrix(params)?;
    let b = matrix.dim();
    if b > MAX_BOUND_DIM {
        return Err(Error::DimensionTooLarge { dim: b, max: MAX_BOUND_DIM });
    }
    if b == 1 {
        // single-state codes have rate equal to capacity at every length
        return Ok(0.0);
    }
    let kf = k as f64;
    let (sigma, nu) = if b == 2 {
        let lg = kf.log2();
        ((lg + 1.0) * (lg + 2.0) / 2.0, lg + 1.0)
    } else {
        let bf = b as f64;
        let exponent = (bf - 1.0).log2() / bf.log2();
        let scale = kf.powf(exponent);
        (
            (bf - 1.0).powi(3) / (bf - 2.0).powi(2) * scale,
            (bf - 1.0).powi(2) / (bf - 2.0) * scale,
        )
    };

    let grand = matrix.grand_sum();
    let mut v = ones(b);
    for _ in 0..b {
        v = matrix.mat_vec(&v);
    }
    let grand_b: BigUint = v.iter().sum();
    let log_ratio = (b as f64) * log2_biguint(&grand) - log2_biguint(&grand_b);

    let two_b_minus_1 = (BigUint::from(1u32) << b) - BigUint::from(1u32);
    let kj = kf * f64::from(params.skip_len());
    Ok(sigma / kj * log2_biguint(&two_b_minus_1) + nu / kj * log_ratio)
}

/// A rate increase between consecutive admissible lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateIncrease {
    pub shorter: RatePoint,
    pub longer: RatePoint,
}

/// Diagnostic scan for rate increases along the length grid. Rates are
/// widely non-increasing for aligned parameters (conjectured, never
/// asserted) but genuinely increase elsewhere, e.g. `(10,5,9)` from `n=20`
/// to `n=25`; callers report the findings rather than failing on them.
pub fn rate_increases(params: &SswParams, k_max: u64) -> Result<Vec<RateIncrease>> {
    let method = auto_method(params);
    let series = match method {
        Method::Reduced => count_reduced(params, k_max)?,
        _ => crate::fsm::count_fsm(params, k_max)?,
    };
    let mut out = Vec::new();
    let mut prev: Option<RatePoint> = None;
    for (n, count) in series.iter() {
        let point = rate_from_count(n, count)?;
        if let Some(last) = prev {
            if point.rate > last.rate + 1e-12 {
                out.push(RateIncrease { shorter: last, longer: point });
            }
        }
        prev = Some(point);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(l: u32, j: u32, w: u32) -> SswParams {
        SswParams::new(l, j, w).unwrap()
    }

    fn from_dense(rows: &[&[u32]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.push_entry(i, j, BigUint::from(v));
                }
            }
        }
        m
    }

    #[test]
    fn eigenvalue_of_reduced_423() {
        // [[0,1],[2,1]] has characteristic polynomial x^2 - x - 2 = (x-2)(x+1)
        let m = from_dense(&[&[0, 1], &[2, 1]]);
        let (lambda, residual) = dominant_eigenvalue(&m, 1e-12).unwrap();
        assert!((lambda - 2.0).abs() < 1e-9, "lambda = {lambda}");
        assert!(residual <= 1e-12 * 2.0);
    }

    #[test]
    fn eigenvalue_trivial_cases() {
        let m = from_dense(&[&[5]]);
        let (lambda, _) = dominant_eigenvalue(&m, 1e-12).unwrap();
        assert!((lambda - 5.0).abs() < 1e-12);

        let b = 7;
        let rows: Vec<Vec<u32>> = vec![vec![1; b]; b];
        let refs: Vec<&[u32]> = rows.iter().map(|r| r.as_slice()).collect();
        let (lambda, _) = dominant_eigenvalue(&from_dense(&refs), 1e-12).unwrap();
        assert!((lambda - b as f64).abs() < 1e-9);
    }

    #[test]
    fn eigenvalue_within_row_sum_bounds() {
        use num::ToPrimitive;
        for (l, j, w) in [(3, 2, 2), (4, 2, 3), (5, 2, 2), (6, 3, 2), (2, 1, 1)] {
            let (_, m) = build_skip_matrix(&params(l, j, w)).unwrap();
            let (lambda, _) = dominant_eigenvalue(&m, 1e-12).unwrap();
            let sums = m.row_sums();
            let min = sums.iter().min().unwrap().to_f64().unwrap();
            let max = sums.iter().max().unwrap().to_f64().unwrap();
            assert!(lambda >= min - 1e-9 && lambda <= max + 1e-9, "({l},{j},{w})");
        }
    }

    #[test]
    fn capacity_examples() {
        let c = capacity(&params(4, 2, 3), Method::Reduced).unwrap();
        assert!((c.value - 0.5).abs() < 1e-9);
        assert!(!c.reducible);
        let c = capacity(&params(4, 2, 3), Method::Fsm).unwrap();
        assert!((c.value - 0.5).abs() < 1e-9);

        // SEC (8,8,7): all-ones 9x9 matrix, capacity log2(9)/8
        let c = capacity(&params(8, 8, 7), Method::Fsm).unwrap();
        assert!((c.value - 9.0f64.log2() / 8.0).abs() < 1e-9);

        // unconstrained codes reach rate 1
        let c = capacity(&params(5, 2, 0), Method::Fsm).unwrap();
        assert!((c.value - 1.0).abs() < 1e-9);

        // golden-ratio instance (2,1,1)
        let c = capacity(&params(2, 1, 1), Method::Fsm).unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((c.lambda - phi).abs() < 1e-9);
    }

    #[test]
    fn methods_agree() {
        for (l, j, w) in [(4, 2, 3), (6, 2, 3), (6, 3, 2), (4, 2, 1), (8, 2, 5), (3, 1, 2)] {
            let f = capacity(&params(l, j, w), Method::Fsm).unwrap();
            let r = capacity(&params(l, j, w), Method::Reduced).unwrap();
            assert!((f.value - r.value).abs() < 1e-9, "({l},{j},{w}): {} vs {}", f.value, r.value);
        }
    }

    #[test]
    fn capacity_877_exceeds_sec() {
        // lambda of (8,7,7) solves x^2 = 7x + 1
        let c877 = capacity(&params(8, 7, 7), Method::Fsm).unwrap();
        let expected = (7.0 + 53.0f64.sqrt()) / 2.0;
        assert!((c877.lambda - expected).abs() < 1e-9);
        let c887 = capacity(&params(8, 8, 7), Method::Fsm).unwrap();
        assert!(c877.value > c887.value);
    }

    #[test]
    fn rates_from_big_counts() {
        let r = finite_rate(&params(4, 2, 3), 4, Method::Reduced).unwrap();
        assert!((r.rate - 5.0f64.log2() / 4.0).abs() < 1e-12);

        let r = finite_rate(&params(10, 5, 9), 20, Method::Reduced).unwrap();
        assert!((r.rate - 96.0f64.log2() / 20.0).abs() < 1e-12);

        assert!(matches!(
            finite_rate(&params(4, 2, 3), 5, Method::Reduced),
            Err(Error::EmptyCode { n: 5 })
        ));
    }

    #[test]
    fn log2_biguint_accuracy() {
        let m = BigUint::from(96u32);
        assert!((log2_biguint(&m) - 96.0f64.log2()).abs() < 1e-12);
        let big = BigUint::from(3u8).pow(200);
        let expected = 200.0 * 3.0f64.log2();
        assert!((log2_biguint(&big) - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn gap_bound_dominates_and_decays() {
        let p = params(3, 2, 2);
        let cap = capacity(&p, Method::Fsm).unwrap().value;
        for k in [1u64, 2, 4, 8] {
            let rate = finite_rate(&p, p.length_at(k), Method::Fsm).unwrap().rate;
            let bound = convergence_bound(&p, k).unwrap();
            assert!(rate - cap <= bound + 1e-12, "k={k}: gap {} bound {bound}", rate - cap);
        }
        let wide = convergence_bound(&p, 16).unwrap();
        let narrow = convergence_bound(&p, 1024).unwrap();
        assert!(narrow < wide);
    }

    #[test]
    fn rate_increase_diagnostic() {
        // the (10,5,9) remark: rate(25) > rate(20)
        let findings = rate_increases(&params(10, 5, 9), 4).unwrap();
        assert!(findings
            .iter()
            .any(|f| f.shorter.n == 20 && f.longer.n == 25 && f.longer.rate > f.shorter.rate));
        // aligned small instances show no increase on this grid
        for (l, j, w) in [(6, 1, 3), (6, 2, 3), (4, 2, 3)] {
            assert!(rate_increases(&params(l, j, w), 10).unwrap().is_empty(), "({l},{j},{w})");
        }
    }

    #[test]
    fn bound_dimension_guard() {
        assert!(matches!(
            convergence_bound(&params(10, 2, 2), 4),
            Err(Error::DimensionTooLarge { .. })
        ));
        // single-state code: gap is identically zero
        assert_eq!(convergence_bound(&params(3, 3, 3), 4).unwrap(), 0.0);
    }
}
