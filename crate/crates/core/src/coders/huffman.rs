use super::merge::{merge_with_heap, merge_with_two_queues, CombineRule};
use super::CoderResult;
use crate::error::{Error, Result};
use crate::model::{Distribution, WeightVector};
use crate::objectives::{avg_redundancy, check_base, dth_exp_redundancy, weighted_exp_average};
use crate::scalar::Scalar;

fn log2_probs<F: Scalar>(p: &Distribution<F>) -> Vec<F> {
    p.probs().iter().map(|x| x.log2()).collect()
}

/// Classic Huffman code minimizing average redundancy (two-queue, linear after sorting).
pub fn huffman_average<F: Scalar>(p: &Distribution<F>) -> CoderResult<F> {
    let trace = merge_with_two_queues(&log2_probs(p), p.probs(), CombineRule::Sum);
    let lengths = trace.leaf_depths();
    let objective_value = avg_redundancy(p, &lengths).expect("sizes match");
    CoderResult {
        lengths,
        trace: Some(trace),
        objective_value,
    }
}

/// Minimizes `log_a Σ w(i) a^{l(i)}` with the combining rule `a w(i) + a w(j)`.
///
/// Works for growing (`a > 1`) and decaying (`0 < a < 1`) bases. The objective
/// value is reported for the given weights, which need not sum to one.
pub fn exp_huffman<F: Scalar>(w: &WeightVector<F>, a: F) -> Result<CoderResult<F>> {
    check_base(a)?;
    let lg_base = a.log2();
    let masses = w.weights();
    Ok(exp_merge(w.log2_weights(), &masses, lg_base))
}

fn exp_merge<F: Scalar>(log2_weights: &[F], masses: &[F], lg_base: F) -> CoderResult<F> {
    let trace = merge_with_heap(log2_weights, masses, CombineRule::Exponential { lg_base });
    let lengths = trace.leaf_depths();
    let objective_value = weighted_exp_average(log2_weights, &lengths, lg_base);
    CoderResult {
        lengths,
        trace: Some(trace),
        objective_value,
    }
}

/// Minimum maximum pointwise redundancy code via the `2 max(w(i), w(j))` rule.
///
/// The objective value is `lg w_root`, which equals `R*` of the returned lengths.
pub fn minimax_huffman<F: Scalar>(p: &Distribution<F>) -> CoderResult<F> {
    let trace = merge_with_two_queues(&log2_probs(p), p.probs(), CombineRule::DoubleMax);
    let lengths = trace.leaf_depths();
    let objective_value = trace.root_log2_weight();
    CoderResult {
        lengths,
        trace: Some(trace),
        objective_value,
    }
}

/// Minimizes d-th exponential redundancy by running the exponential merge on
/// weights `p(i)^{1+d}` with base `2^d`.
///
/// The trace keeps the leaf probabilities as node masses.
pub fn dth_exp_code<F: Scalar>(p: &Distribution<F>, d: F) -> Result<CoderResult<F>> {
    if !(d > F::zero()) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("d must be positive, got {d}")));
    }
    let weights: Vec<F> = p.probs().iter().map(|x| (F::one() + d) * x.log2()).collect();
    let mut result = exp_merge(&weights, p.probs(), d);
    result.objective_value = dth_exp_redundancy(p, &result.lengths, d)?;
    Ok(result)
}
