//! Extremal distributions witnessing that the bounds are tight.
//!
//! Each generator returns a distribution together with an [`ExtremalSpec`]
//! describing which bound it attains (or approaches as `ε → 0`).

use serde::Serialize;

use crate::bounds::lambda_of;
use crate::error::{Error, Result};
use crate::model::Distribution;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalFamily {
    /// `(p1, 1 - p1 - ε, ε)` for `p1 ≥ 1/2`.
    UpperTwoThirds,
    /// `2^λ - 2` equal middle masses plus `ε`; attains `λ + lg p1`.
    UpperRow3,
    /// `2^λ - 1` equal middle masses plus `ε`; approaches the open upper bound.
    UpperRow12,
    /// `(p1, (1-p1)/(2^λ-2), ...)`: a complete tree.
    LowerComplete,
    /// `(p1, 2^{-λ}, ..., 2^{1-λ} - p1)`: a fixed-length tree.
    LowerFixed,
    L1UpperWitness,
    L1LowerWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Achieves,
    Approaches,
}

/// What an extremal distribution witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target<F> {
    /// Optimal maximum pointwise redundancy, in bits.
    Redundancy(F),
    /// First codeword length shared by every optimal code; see [`gen_l1_family`].
    FirstLength(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalSpec<F> {
    pub family: ExtremalFamily,
    pub p1: F,
    pub epsilon: F,
    pub expectation: Expectation,
    pub target: Target<F>,
    /// Set for the re-derived fixed-length family of [`gen_lower_family`].
    pub corrected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L1Side {
    Upper,
    Lower,
}

/// Largest `λ` for which generators will materialize `2^λ + 1` symbols.
pub const MAX_LAMBDA: u32 = 20;

fn check_p1<F: Scalar>(p1: F) -> Result<u32> {
    if !(p1 > F::zero() && p1 < F::one()) {
        return Err(Error::InvalidParameter(format!("p1 must lie in (0,1), got {p1}")));
    }
    let lambda = lambda_of(p1).max(1);
    if lambda > MAX_LAMBDA {
        return Err(Error::InvalidParameter(format!(
            "p1 = {p1} needs more than 2^{MAX_LAMBDA} symbols"
        )));
    }
    Ok(lambda)
}

fn pow2<F: Scalar>(e: i32) -> F {
    F::lit(2.0).powi(e)
}

fn build<F: Scalar>(p1: F, middle: F, count: usize, last: Option<F>) -> Result<Distribution<F>> {
    let mut v = Vec::with_capacity(count + 2);
    v.push(p1);
    v.extend(std::iter::repeat_n(middle, count));
    v.extend(last);
    Distribution::new(&v)
}

/// Legal `ε` range for [`gen_upper_family`] at `p1`: `(0, max)`, closed at the
/// top when the flag is set.
pub fn upper_epsilon_range<F: Scalar>(p1: F) -> Result<(F, bool)> {
    let lambda = check_p1(p1)?;
    let one = F::one();
    let l = lambda as i32;
    Ok(if lambda == 1 {
        ((one - p1) / F::lit(2.0), true)
    } else if p1 >= F::lit(2.0) / (pow2::<F>(l) + one) {
        (one - p1 * pow2::<F>(l - 1), false)
    } else {
        ((one - p1) / pow2::<F>(l), true)
    })
}

/// Distribution attaining or approaching the upper bound on optimal maximum
/// pointwise redundancy at `p1`.
///
/// Without `epsilon`, achieving families use half the legal maximum and
/// approaching ones use `1e-6`.
pub fn gen_upper_family<F: Scalar>(
    p1: F,
    epsilon: Option<F>,
) -> Result<(Distribution<F>, ExtremalSpec<F>)> {
    let lambda = check_p1(p1)?;
    let one = F::one();
    let l = lambda as i32;
    let (family, expectation, target) = if lambda == 1 {
        if p1 >= F::lit(2.0) / F::lit(3.0) {
            (ExtremalFamily::UpperTwoThirds, Expectation::Achieves, one + p1.log2())
        } else {
            (
                ExtremalFamily::UpperTwoThirds,
                Expectation::Approaches,
                F::lit(2.0) + (one - p1).log2(),
            )
        }
    } else if p1 >= F::lit(2.0) / (pow2::<F>(l) + one) {
        (
            ExtremalFamily::UpperRow3,
            Expectation::Achieves,
            F::lit(lambda as f64) + p1.log2(),
        )
    } else {
        (
            ExtremalFamily::UpperRow12,
            Expectation::Approaches,
            one + ((one - p1) / (one - pow2::<F>(-l))).log2(),
        )
    };

    let (max, closed) = upper_epsilon_range(p1)?;
    let epsilon = epsilon.unwrap_or(match expectation {
        Expectation::Achieves => max / F::lit(2.0),
        Expectation::Approaches => F::lit(1e-6).min(max / F::lit(2.0)),
    });
    let legal = epsilon > F::zero() && if closed { epsilon <= max } else { epsilon < max };
    if !legal {
        return Err(Error::InvalidEpsilon {
            epsilon: epsilon.as_f64(),
            range: format!("(0, {}{}", max, if closed { "]" } else { ")" }),
        });
    }

    let rest = one - p1 - epsilon;
    let p = match family {
        ExtremalFamily::UpperTwoThirds => build(p1, rest, 1, Some(epsilon))?,
        ExtremalFamily::UpperRow3 => {
            let count = (1usize << lambda) - 2;
            build(p1, rest / F::lit(count as f64), count, Some(epsilon))?
        }
        _ => {
            let count = (1usize << lambda) - 1;
            build(p1, rest / F::lit(count as f64), count, Some(epsilon))?
        }
    };
    Ok((
        p,
        ExtremalSpec {
            family,
            p1,
            epsilon,
            expectation,
            target: Target::Redundancy(target),
            corrected: false,
        },
    ))
}

/// Distribution attaining the lower bound on optimal maximum pointwise
/// redundancy at `p1`.
///
/// For `p1 ∈ [2^{-λ}, 1/(2^λ - 1))` the witness is the fixed-length family
/// `(p1, 2^{-λ} × (2^λ - 2), 2^{1-λ} - p1)`, marked `corrected` because the
/// usual way of writing it is off by one in `λ` and goes negative.
pub fn gen_lower_family<F: Scalar>(p1: F) -> Result<(Distribution<F>, ExtremalSpec<F>)> {
    let lambda = check_p1(p1)?;
    let one = F::one();
    let l = lambda as i32;
    let lf = F::lit(lambda as f64);
    let fixed = lambda == 1 || p1 < one / (pow2::<F>(l) - one);
    let (p, family, target) = if fixed {
        let count = (1usize << lambda) - 2;
        let p = build(p1, pow2::<F>(-l), count, Some(pow2::<F>(1 - l) - p1))?;
        (p, ExtremalFamily::LowerFixed, lf + p1.log2())
    } else {
        let count = (1usize << lambda) - 2;
        let p = build(p1, (one - p1) / F::lit(count as f64), count, None)?;
        let target = ((one - p1) / (one - pow2::<F>(1 - l))).log2();
        (p, ExtremalFamily::LowerComplete, target)
    };
    Ok((
        p,
        ExtremalSpec {
            family,
            p1,
            epsilon: F::zero(),
            expectation: Expectation::Achieves,
            target: Target::Redundancy(target.max(F::zero())),
            corrected: fixed,
        },
    ))
}

/// Witnesses for the first-codeword-length bounds.
///
/// Upper side, `p1 ∈ [2^{-ν-1}, 2^{-ν})`: `(p1, 2^{-ν-1} × (2^{ν+1} - 2),
/// 2^{-ν} - p1)`, where every optimal code has `l(1) = ν + 1` (the uniform
/// distribution at the left endpoint).
///
/// Lower side, `p1 ∈ (1/(2^ν - 1), 2^{1-ν})`: `(p1, (1-p1)/(2^ν - 2) × (2^ν - 2))`,
/// where every optimal code has `l(1) = ν - 1`.
pub fn gen_l1_family<F: Scalar>(p1: F, side: L1Side) -> Result<(Distribution<F>, ExtremalSpec<F>)> {
    let lambda = check_p1(p1)?;
    let one = F::one();
    let l = lambda as i32;
    let (p, family, first_length) = match side {
        L1Side::Upper => {
            let nu = lambda - 1;
            let count = (1usize << (nu + 1)) - 2;
            let last = pow2::<F>(-(nu as i32)) - p1;
            let p = build(p1, pow2::<F>(-(nu as i32) - 1), count, Some(last))?;
            (p, ExtremalFamily::L1UpperWitness, nu + 1)
        }
        L1Side::Lower => {
            if lambda < 2 || p1 <= one / (pow2::<F>(l) - one) {
                return Err(Error::InvalidParameter(format!(
                    "p1 = {p1} is not in (1/(2^ν-1), 2^(1-ν)) for any ν ≥ 2"
                )));
            }
            let count = (1usize << lambda) - 2;
            let p = build(p1, (one - p1) / F::lit(count as f64), count, None)?;
            (p, ExtremalFamily::L1LowerWitness, lambda - 1)
        }
    };
    Ok((
        p,
        ExtremalSpec {
            family,
            p1,
            epsilon: F::zero(),
            expectation: Expectation::Achieves,
            target: Target::FirstLength(first_length),
            corrected: false,
        },
    ))
}
