//! Closed-form bounds in terms of the most probable symbol `p(1)`.
//!
//! [`minimax_bounds`] gives the tight interval for the optimal maximum pointwise
//! redundancy, [`l1_bounds`] the matching statements about the first codeword
//! length, and [`dexp_bounds`] a valid (not tight) interval for d-th exponential
//! redundancy assembled from the minimax upper bound and a known lower bound on
//! average redundancy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Distribution, LengthVector};
use crate::objectives::{avg_redundancy, dth_exp_redundancy, max_redundancy};
use crate::scalar::{snapped_ceil, snapped_floor, Scalar};

/// An interval for an optimal objective value.
///
/// An endpoint flagged achievable is closed (some distribution attains it);
/// otherwise it is open and only approached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInterval<F> {
    pub lower: F,
    pub upper: F,
    pub lower_achievable: bool,
    pub upper_achievable: bool,
    /// `⌈-lg p(1)⌉`.
    pub lambda: u32,
    /// `lower == upper`: the optimum is fully determined by `p(1)`.
    pub determined: bool,
    /// Whether every endpoint is attained or approached by some distribution.
    pub tight: bool,
}

impl<F: Scalar> BoundInterval<F> {
    /// Whether `value` lies in the interval. Closed endpoints admit `tol` of
    /// slack; open endpoints are strict.
    pub fn contains(&self, value: F, tol: F) -> bool {
        let above = if self.lower_achievable {
            value >= self.lower - tol
        } else {
            value > self.lower
        };
        let below = if self.upper_achievable {
            value <= self.upper + tol
        } else {
            value < self.upper
        };
        above && below
    }
}

fn check_open_unit<F: Scalar>(p1: F) -> Result<()> {
    if !(p1 > F::zero() && p1 < F::one()) {
        return Err(Error::InvalidParameter(format!("p1 must lie in (0,1), got {p1}")));
    }
    Ok(())
}

/// `⌈-lg p1⌉`, snapping `-lg p1` to an integer when within `1e-12` of one.
pub fn lambda_of<F: Scalar>(p1: F) -> u32 {
    snapped_ceil(-p1.log2()).max(F::zero()).to_u32().unwrap_or(u32::MAX)
}

fn pow2<F: Scalar>(e: i32) -> F {
    F::lit(2.0).powi(e)
}

/// Tight bounds on the optimal maximum pointwise redundancy given `p(1)`.
pub fn minimax_bounds<F: Scalar>(p1: F) -> Result<BoundInterval<F>> {
    if !(p1 > F::zero() && p1 <= F::one()) {
        return Err(Error::InvalidParameter(format!("p1 must lie in (0,1], got {p1}")));
    }
    let one = F::one();
    let two_thirds = F::lit(2.0) / F::lit(3.0);
    if p1 == one {
        return Ok(BoundInterval {
            lower: F::zero(),
            upper: F::zero(),
            lower_achievable: true,
            upper_achievable: true,
            lambda: 0,
            determined: true,
            tight: true,
        });
    }
    let lambda = lambda_of(p1).max(1);
    let (lower, upper, upper_achievable) = if lambda == 1 {
        if p1 >= two_thirds {
            let v = one + p1.log2();
            (v, v, true)
        } else {
            (one + p1.log2(), F::lit(2.0) + (one - p1).log2(), false)
        }
    } else {
        let l = lambda as i32;
        let lf = F::lit(lambda as f64);
        let row1_top = one / (pow2::<F>(l) - one);
        let row2_top = F::lit(2.0) / (pow2::<F>(l) + one);
        let first_term = lf + p1.log2();
        let rest_full = one + ((one - p1) / (one - pow2::<F>(-l))).log2();
        let rest_shallow = ((one - p1) / (one - pow2::<F>(1 - l))).log2();
        if p1 < row1_top {
            (first_term, rest_full, false)
        } else if p1 < row2_top {
            (rest_shallow, rest_full, false)
        } else {
            (rest_shallow, first_term, true)
        }
    };
    // snapping λ can leave p1 a hair outside its row; keep the interval in [0,1]
    let lower = lower.max(F::zero());
    let upper = upper.min(one).max(lower);
    Ok(BoundInterval {
        lower,
        upper,
        lower_achievable: true,
        upper_achievable,
        lambda,
        determined: lower == upper,
        tight: true,
    })
}

/// The optimal-redundancy lower bound written as a minimum over the first
/// codeword length `μ`: `min_μ μ + lg max(p1, (1 - p1)/(2^μ - 1))`.
///
/// Independent of the row table in [`minimax_bounds`] and equal to its lower
/// endpoint.
pub fn minimax_lower_by_first_length<F: Scalar>(p1: F) -> Result<F> {
    check_open_unit(p1)?;
    let one = F::one();
    let best = (1..=60)
        .map(|mu: i32| {
            let deepest = (one - p1) / (pow2::<F>(mu) - one);
            F::lit(mu as f64) + p1.max(deepest).log2()
        })
        .fold(F::infinity(), F::min);
    Ok(best)
}

/// Bounds on the first codeword length of minimax-optimal codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct L1Bounds {
    /// Every optimal code has `l(1)` at most this.
    pub max_over_all_optima: u32,
    /// Some optimal code has `l(1)` at least this.
    pub min_over_some_optimum: u32,
}

/// First-codeword-length bounds given `p(1)`.
pub fn l1_bounds<F: Scalar>(p1: F) -> Result<L1Bounds> {
    check_open_unit(p1)?;
    let max_over_all_optima = lambda_of(p1);
    let min_over_some_optimum = snapped_floor((F::one() + p1.recip()).log2())
        .to_u32()
        .unwrap_or(u32::MAX);
    Ok(L1Bounds {
        max_over_all_optima,
        min_over_some_optimum,
    })
}

/// Gallager's upper bound `p(1) + 0.086` on optimal average redundancy.
///
/// Not capped at one; callers may apply the trivial bound themselves.
pub fn gallager_upper_avg<F: Scalar>(p1: F) -> Result<F> {
    check_open_unit(p1)?;
    Ok(p1 + F::lit(0.086))
}

fn binary_entropy<F: Scalar>(x: F) -> F {
    let y = F::one() - x;
    -(x * x.log2() + y * y.log2())
}

/// Lower bound on optimal average redundancy in terms of `p(1)`:
/// `ξ - (1 - p1) lg(2^ξ - 1) - H(p1, 1 - p1)`.
pub fn avg_lower_moab<F: Scalar>(p1: F) -> Result<F> {
    check_open_unit(p1)?;
    let one = F::one();
    let x = (p1 - one).recip();
    let y = p1 / (p1 - one);
    // 1 - 2^t for t < 0, accurate when t is tiny
    let one_minus_pow2 = |t: F| -(t * F::LN_2()).exp_m1();
    let lg_ratio = one_minus_pow2(x).log2() - one_minus_pow2(y).log2();
    // the ratio exceeds one for every p1 in (0,1), so ξ ≥ 1 even when both
    // terms round to one near p1 = 1
    let xi = snapped_ceil(lg_ratio).max(one);
    let xi_i = xi.to_i32().unwrap_or(i32::MAX);
    Ok(xi - (one - p1) * (pow2::<F>(xi_i) - one).log2() - binary_entropy(p1))
}

/// Valid but not tight bounds on optimal d-th exponential redundancy.
pub fn dexp_bounds<F: Scalar>(p1: F, d: F) -> Result<BoundInterval<F>> {
    if !(d > F::zero()) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("d must be positive, got {d}")));
    }
    let minimax = minimax_bounds(p1)?;
    if p1 == F::one() {
        return Ok(BoundInterval { tight: false, ..minimax });
    }
    let lower = avg_lower_moab(p1)?.max(F::zero());
    Ok(BoundInterval {
        lower,
        upper: minimax.upper,
        lower_achievable: true,
        upper_achievable: minimax.upper_achievable,
        lambda: minimax.lambda,
        determined: false,
        tight: false,
    })
}

/// `R̄ ≤ R^{d_1} ≤ ... ≤ R*` for one code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RedundancyChain<F> {
    pub average: F,
    /// `(d, R^d)` sorted by `d`.
    pub exponential: Vec<(F, F)>,
    pub maximum: F,
}

impl<F: Scalar> RedundancyChain<F> {
    /// Checks `0 ≤ R̄ ≤ R^{d_1} ≤ ... ≤ R*` with slack `tol`.
    pub fn is_ordered(&self, tol: F) -> bool {
        let mut values = vec![self.average];
        values.extend(self.exponential.iter().map(|&(_, v)| v));
        values.push(self.maximum);
        self.average >= -tol && values.windows(2).all(|w| w[0] <= w[1] + tol)
    }
}

/// Evaluates the redundancy chain of `l` for every `d` in `d_list`.
pub fn simple_chain<F: Scalar>(
    p: &Distribution<F>,
    l: &LengthVector,
    d_list: &[F],
) -> Result<RedundancyChain<F>> {
    let mut ds = d_list.to_vec();
    ds.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let exponential = ds
        .into_iter()
        .map(|d| Ok((d, dth_exp_redundancy(p, l, d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RedundancyChain {
        average: avg_redundancy(p, l)?,
        exponential,
        maximum: max_redundancy(p, l)?,
    })
}

/// One line of the bound sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p1: f64,
    pub bounds: BoundInterval<f64>,
}

pub const SWEEP_HEADER: &str = "p1,lambda,lower,lower_achievable,upper,upper_achievable,determined";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let b = &self.bounds;
        format!(
            "{:.6},{},{:.6},{},{:.6},{},{}",
            self.p1,
            b.lambda,
            b.lower,
            u8::from(b.lower_achievable),
            b.upper,
            u8::from(b.upper_achievable),
            u8::from(b.determined)
        )
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}
