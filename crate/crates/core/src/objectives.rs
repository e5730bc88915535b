//! Codeword-length objectives and redundancy functionals.
//!
//! Everything here is evaluated on a sorted [`Distribution`] and a
//! [`LengthVector`] indexed the same way. Exponential objectives are computed in
//! the base-2 log domain so that large exponents and tiny probabilities neither
//! overflow nor underflow.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Distribution, LengthVector};
use crate::scalar::{log2_sum_exp2, Scalar};

/// Per-symbol and aggregate redundancies of one code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedundancyReport<F> {
    pub entropy: F,
    pub avg_redundancy: F,
    pub max_pointwise_redundancy: F,
    /// `l(i) + lg p(i)` in sorted symbol order.
    pub pointwise: Vec<F>,
    /// Sorted index of the first symbol attaining the maximum.
    pub argmax_symbol: usize,
}

/// Shannon entropy `H(p)` in bits.
pub fn entropy<F: Scalar>(p: &Distribution<F>) -> F {
    let h = p
        .probs()
        .iter()
        .fold(F::zero(), |acc, &x| acc - x * x.log2());
    h.max(F::zero())
}

/// Per-symbol redundancies `l(i) + lg p(i)`.
pub fn pointwise_redundancies<F: Scalar>(p: &Distribution<F>, l: &LengthVector) -> Result<Vec<F>> {
    p.check_len(l)?;
    Ok(p.probs()
        .iter()
        .zip(l.as_slice())
        .map(|(&x, &len)| F::lit(len as f64) + x.log2())
        .collect())
}

/// Average redundancy `Σ p(i)(l(i) + lg p(i))`.
pub fn avg_redundancy<F: Scalar>(p: &Distribution<F>, l: &LengthVector) -> Result<F> {
    p.check_len(l)?;
    Ok(p.probs()
        .iter()
        .zip(l.as_slice())
        .fold(F::zero(), |acc, (&x, &len)| acc + x * (F::lit(len as f64) + x.log2())))
}

/// Maximum pointwise redundancy `R*(l,p)`, with the full breakdown.
pub fn max_pointwise_redundancy<F: Scalar>(
    p: &Distribution<F>,
    l: &LengthVector,
) -> Result<RedundancyReport<F>> {
    let pointwise = pointwise_redundancies(p, l)?;
    let (argmax_symbol, max) = pointwise
        .iter()
        .copied()
        .enumerate()
        .fold((0, F::neg_infinity()), |best, (i, r)| if r > best.1 { (i, r) } else { best });
    Ok(RedundancyReport {
        entropy: entropy(p),
        avg_redundancy: avg_redundancy(p, l)?,
        max_pointwise_redundancy: max,
        pointwise,
        argmax_symbol,
    })
}

/// `R*(l,p)` alone.
pub fn max_redundancy<F: Scalar>(p: &Distribution<F>, l: &LengthVector) -> Result<F> {
    p.check_len(l)?;
    Ok(p.probs()
        .iter()
        .zip(l.as_slice())
        .map(|(&x, &len)| F::lit(len as f64) + x.log2())
        .fold(F::neg_infinity(), F::max))
}

pub(crate) fn check_base<F: Scalar>(a: F) -> Result<()> {
    if !(a > F::zero()) || a == F::one() || !a.is_finite() {
        return Err(Error::InvalidBase(a.as_f64()));
    }
    Ok(())
}

/// Exponential average `L_a(p,l) = log_a Σ p(i) a^{l(i)}`.
pub fn exp_average<F: Scalar>(p: &Distribution<F>, l: &LengthVector, a: F) -> Result<F> {
    check_base(a)?;
    p.check_len(l)?;
    let lg_a = a.log2();
    let terms = p
        .probs()
        .iter()
        .zip(l.as_slice())
        .map(move |(&x, &len)| x.log2() + F::lit(len as f64) * lg_a);
    Ok(log2_sum_exp2(terms) / lg_a)
}

/// `log_a Σ w(i) a^{l(i)}` for arbitrary positive weights given as `lg w(i)`.
pub(crate) fn weighted_exp_average<F: Scalar>(log2_weights: &[F], l: &LengthVector, lg_a: F) -> F {
    let terms = log2_weights
        .iter()
        .zip(l.as_slice())
        .map(move |(&w, &len)| w + F::lit(len as f64) * lg_a);
    log2_sum_exp2(terms) / lg_a
}

/// d-th exponential redundancy `R^d(l,p) = (1/d) lg Σ p(i)^{1+d} 2^{d l(i)}`.
pub fn dth_exp_redundancy<F: Scalar>(p: &Distribution<F>, l: &LengthVector, d: F) -> Result<F> {
    if !(d > F::zero()) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("d must be positive, got {d}")));
    }
    p.check_len(l)?;
    // lg(p^{1+d} 2^{dl}) = lg p + d (l + lg p)
    let terms = p.probs().iter().zip(l.as_slice()).map(move |(&x, &len)| {
        let lg_p = x.log2();
        lg_p + d * (F::lit(len as f64) + lg_p)
    });
    Ok(log2_sum_exp2(terms) / d)
}

/// A codeword-length objective that can be minimized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective<F> {
    /// Average redundancy `R̄`.
    Average,
    /// Maximum pointwise redundancy `R*`.
    Minimax,
    /// Exponential average `L_a` with the given base.
    ExpAverage(F),
    /// d-th exponential redundancy `R^d`.
    DthExp(F),
}

impl<F: Scalar> Objective<F> {
    pub fn evaluate(&self, p: &Distribution<F>, l: &LengthVector) -> Result<F> {
        match *self {
            Objective::Average => avg_redundancy(p, l),
            Objective::Minimax => max_redundancy(p, l),
            Objective::ExpAverage(a) => exp_average(p, l, a),
            Objective::DthExp(d) => dth_exp_redundancy(p, l, d),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Objective::Average => "avg".into(),
            Objective::Minimax => "minimax".into(),
            Objective::ExpAverage(a) => format!("exp(a={a})"),
            Objective::DthExp(d) => format!("dexp(d={d})"),
        }
    }
}
