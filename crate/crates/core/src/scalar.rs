//! Floating-point scalar abstraction.
//!
//! Probabilities, weights and redundancies are generic over [`Scalar`], which is
//! implemented for `f32` and `f64`. Codeword lengths are always integers and Kraft
//! sums are exact rationals, so nothing combinatorial depends on the scalar type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used for probabilities and bit-valued objectives.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation of a probability sum from one.
    const SUM_TOLERANCE: f64;
    /// Absolute tolerance for comparing bit-valued quantities.
    const EQ_TOLERANCE: f64;

    /// Converts an `f64` literal. Panics only on values no float can hold.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable as scalar")
    }

    fn sum_tolerance() -> Self {
        Self::lit(Self::SUM_TOLERANCE)
    }

    fn eq_tolerance() -> Self {
        Self::lit(Self::EQ_TOLERANCE)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const SUM_TOLERANCE: f64 = 1e-9;
    const EQ_TOLERANCE: f64 = 1e-9;
}

impl Scalar for f32 {
    const SUM_TOLERANCE: f64 = 1e-5;
    const EQ_TOLERANCE: f64 = 1e-5;
}

/// `lg(2^a + 2^b)` without leaving the log domain.
pub(crate) fn log2_add<F: Scalar>(a: F, b: F) -> F {
    if a == F::neg_infinity() {
        return b;
    }
    if b == F::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + ((lo - hi).exp2()).ln_1p() / F::LN_2()
}

/// `lg Σ 2^{t_i}`; `-inf` for an empty iterator.
pub(crate) fn log2_sum_exp2<F: Scalar, I>(terms: I) -> F
where
    I: IntoIterator<Item = F>,
    I::IntoIter: Clone,
{
    let iter = terms.into_iter();
    let max = iter.clone().fold(F::neg_infinity(), F::max);
    if max == F::neg_infinity() || !max.is_finite() {
        return max;
    }
    let sum = iter.fold(F::zero(), |acc, t| acc + (t - max).exp2());
    max + sum.log2()
}

/// `⌈x⌉`, except that values within `1e-12` of an integer snap to it first.
pub(crate) fn snapped_ceil<F: Scalar>(x: F) -> F {
    let nearest = x.round();
    if (x - nearest).abs() <= F::lit(1e-12) {
        nearest
    } else {
        x.ceil()
    }
}

/// `⌊x⌋` with the same integer snapping as [`snapped_ceil`].
pub(crate) fn snapped_floor<F: Scalar>(x: F) -> F {
    let nearest = x.round();
    if (x - nearest).abs() <= F::lit(1e-12) {
        nearest
    } else {
        x.floor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_add_matches_linear_sum() {
        let got: f64 = log2_add(0.5f64.log2(), 0.25f64.log2());
        assert!((got - 0.75f64.log2()).abs() < 1e-15);
        assert_eq!(log2_add(f64::NEG_INFINITY, 3.0), 3.0);
    }

    #[test]
    fn log2_sum_exp2_survives_huge_exponents() {
        let got: f64 = log2_sum_exp2([2000.0, 2000.0]);
        assert!((got - 2001.0).abs() < 1e-12);
        let got: f64 = log2_sum_exp2([-5000.0, -5001.0]);
        assert!((got - (-5000.0 + 1.5f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn snapping() {
        assert_eq!(snapped_ceil(2.0000000000000004f64), 2.0);
        assert_eq!(snapped_ceil(2.1f64), 3.0);
        assert_eq!(snapped_floor(1.9999999999999998f64), 2.0);
        assert_eq!(snapped_floor(1.5f64), 1.0);
    }
}
