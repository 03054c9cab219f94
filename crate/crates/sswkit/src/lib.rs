//! Exact enumeration and capacity analysis for skip-sliding window (SSW)
//! constrained codes.
//!
//! An `(L, J, W)`-SSW code is the set of binary strings of length `L + kJ`
//! in which every window of `L` consecutive bits starting at positions
//! `1, J+1, 2J+1, ...` carries Hamming weight at least `W`. The two classic
//! families sit at the ends of the spectrum: `J = 1` gives sliding-window
//! constrained codes and `J = L` gives subblock-energy constrained codes.
//!
//! The crate counts codewords by four independent routes and cross-checks
//! them against a brute-force oracle:
//!
//! * [`oracle`] — exhaustive enumeration, the ground truth at small lengths;
//! * [`fsm`] — transfer-matrix counting on the weight-filtered de Bruijn
//!   graph, valid for every parameter set;
//! * [`cluster`] — the Goulden-Jackson cluster method over bad words, for
//!   aligned parameters (`L` a multiple of `J`);
//! * [`reduced`] — weight-vector state grouping and the refined
//!   Goulden-Jackson system, which keep instances like `(40, 20, 20)` tiny.
//!
//! On top of the counters, [`spectral`] turns dominant eigenvalues into
//! noiseless capacities, finite-length rates and a convergence bound, and
//! [`noisy`] computes lower/upper bounds on the noisy capacity over the
//! binary symmetric and binary erasure channels.

pub mod bits;
pub mod cluster;
pub mod combin;
pub mod error;
pub mod fsm;
pub mod matrix;
pub mod noisy;
pub mod oracle;
pub mod params;
pub mod reduced;
pub mod series;
pub mod spectral;

pub use bits::{from_qary, to_qary, BitString};
pub use error::{Error, Result};
pub use matrix::{Irreducibility, SparseMatrix};
pub use params::{LengthGrid, SswParams};
pub use series::{CountSeries, Method, TruncatedSeries};
pub use spectral::{CapacityEstimate, RatePoint};
