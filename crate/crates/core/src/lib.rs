//! Optimal binary prefix codes under maximum pointwise redundancy.
//!
//! The crate builds codes for the minimax objective `R* = max_i l(i) + lg p(i)`
//! and its relatives (average redundancy, Campbell's exponential average, the
//! d-th exponential redundancy), evaluates the tight bounds on `R*` and on the
//! first codeword length in terms of the largest probability `p(1)`, and
//! generates the distributions that make those bounds tight. An exhaustive
//! oracle over length vectors checks everything for small alphabets.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`. Weights are carried in the log domain and
//! Kraft sums are exact rationals.
//!
//! ```
//! use minimax_prefix::{minimax_huffman, Distribution64};
//!
//! let p = Distribution64::new(&[0.5, 0.3, 0.2]).unwrap();
//! let code = minimax_huffman(&p);
//! assert_eq!(code.lengths.as_slice(), &[1, 2, 2]);
//! assert!((code.objective_value - 1.2f64.log2()).abs() < 1e-12);
//! ```

// `!(x > 0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod codec;
pub mod coders;
pub mod error;
pub mod extremal;
pub mod io;
pub mod model;
pub mod objectives;
pub mod oracle;
pub mod scalar;
pub mod verify;

pub use bounds::{
    avg_lower_moab, dexp_bounds, gallager_upper_avg, l1_bounds, lambda_of, minimax_bounds,
    BoundInterval, L1Bounds, RedundancyChain,
};
pub use coders::{
    dth_exp_code, exp_huffman, first_order_shannon, huffman_average, minimax_huffman,
    shannon_code, CoderResult,
};
pub use error::{Error, Result};
pub use extremal::{gen_l1_family, gen_lower_family, gen_upper_family, ExtremalSpec};
pub use model::{
    canonical_assign, kraft_sum, make_distribution, Codebook, Distribution, LengthVector,
    MergeTrace, WeightVector,
};
pub use objectives::{
    avg_redundancy, dth_exp_redundancy, entropy, exp_average, max_pointwise_redundancy,
    max_redundancy, Objective,
};
pub use oracle::{all_optima, brute_force_optimum, enumerate_length_vectors};
pub use scalar::Scalar;
pub use verify::{run_trials, sweep_bounds, TrialReport};

pub type Distribution64 = Distribution<f64>;
pub type Distribution32 = Distribution<f32>;
pub type WeightVector64 = WeightVector<f64>;
pub type MergeTrace64 = MergeTrace<f64>;
pub type CoderResult64 = CoderResult<f64>;
pub type BoundInterval64 = BoundInterval<f64>;
pub type ExtremalSpec64 = ExtremalSpec<f64>;
pub type Objective64 = Objective<f64>;
