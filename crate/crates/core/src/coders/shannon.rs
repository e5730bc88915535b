use super::CoderResult;
use crate::error::{Error, Result};
use crate::model::{Distribution, LengthVector};
use crate::objectives::max_redundancy;
use crate::scalar::Scalar;

/// Smallest `l ≥ 0` with `2^{-l} ≤ q`, i.e. `⌈-lg q⌉`, decided by exact
/// comparison against powers of two.
pub(crate) fn shannon_length<F: Scalar>(q: F) -> u32 {
    debug_assert!(q > F::zero());
    let two = F::lit(2.0);
    let mut l = (-q.log2()).ceil().max(F::zero()).to_u32().unwrap_or(0);
    while l > 0 && two.powi(-(l as i32 - 1)) <= q {
        l -= 1;
    }
    while two.powi(-(l as i32)) > q {
        l += 1;
    }
    l
}

/// Shannon code `l(i) = ⌈-lg p(i)⌉`.
pub fn shannon_code<F: Scalar>(p: &Distribution<F>) -> CoderResult<F> {
    let lengths = LengthVector::new(p.probs().iter().map(|&x| shannon_length(x)).collect());
    let objective_value = max_redundancy(p, &lengths).expect("sizes match");
    CoderResult {
        lengths,
        trace: None,
        objective_value,
    }
}

/// First-order Shannon code: `l(1) = λ = ⌈-lg p(1)⌉` and, for the rest,
/// `l(i) = ⌈-lg(p(i)(1 - 2^{-λ})/(1 - p(1)))⌉`.
pub fn first_order_shannon<F: Scalar>(p: &Distribution<F>) -> Result<CoderResult<F>> {
    if p.len() < 2 {
        return Err(Error::DegenerateInput);
    }
    let probs = p.probs();
    let lambda = shannon_length(p.p1());
    let scale = (F::one() - F::lit(2.0).powi(-(lambda as i32))) / (F::one() - p.p1());
    let scaled: Vec<F> = probs.iter().map(|&x| x * scale).collect();
    let mut lengths: Vec<u32> = std::iter::once(lambda)
        .chain(scaled[1..].iter().map(|&q| shannon_length(q)))
        .collect();

    // Rounding in the scaled probabilities can, in principle, shorten a codeword
    // sitting exactly on a power-of-two boundary. Lengthen the tightest one until
    // the exact Kraft check passes.
    while !LengthVector::new(lengths.clone()).is_kraft_feasible() {
        let tightest = (1..lengths.len())
            .min_by(|&a, &b| {
                let slack = |i: usize| scaled[i] * F::lit(2.0).powi(lengths[i] as i32);
                slack(a).partial_cmp(&slack(b)).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("n >= 2");
        lengths[tightest] += 1;
    }

    let lengths = LengthVector::new(lengths);
    let objective_value = max_redundancy(p, &lengths)?;
    Ok(CoderResult {
        lengths,
        trace: None,
        objective_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(v: &[f64]) -> Distribution<f64> {
        Distribution::new(v).unwrap()
    }

    #[test]
    fn shannon_lengths() {
        assert_eq!(shannon_length(0.25f64), 2);
        assert_eq!(shannon_length(0.2500001f64), 2);
        assert_eq!(shannon_length(0.2499999f64), 3);
        assert_eq!(shannon_length(1.0f64), 0);
        assert_eq!(shannon_length(1e-300f64), 997);
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_code(&dist(&[0.5, 0.25, 0.25])).lengths.as_slice(), &[1, 2, 2]);
        assert_eq!(shannon_code(&dist(&[0.5, 0.3, 0.2])).lengths.as_slice(), &[1, 2, 3]);
        let r = shannon_code(&dist(&[1.0]));
        assert_eq!(r.lengths.as_slice(), &[0]);
        assert_eq!(r.objective_value, 0.0);
    }

    #[test]
    fn first_order_examples() {
        let l = |v: &[f64]| first_order_shannon(&dist(v)).unwrap().lengths.into_inner();
        assert_eq!(l(&[0.5, 0.25, 0.25]), [1, 2, 2]);
        assert_eq!(l(&[0.4, 0.3, 0.3]), [2, 2, 2]);
        // 0.2 * (0.5/0.3) = 1/3 -> 2 bits; 0.1 * (0.5/0.3) = 1/6 -> 3 bits
        assert_eq!(l(&[0.7, 0.2, 0.1]), [1, 2, 3]);
        assert!(matches!(
            first_order_shannon(&dist(&[1.0])),
            Err(Error::DegenerateInput)
        ));
    }

    #[test]
    fn first_order_tail_redundancy_bound() {
        let p = dist(&[0.49, 0.49, 0.02]);
        let r = first_order_shannon(&p).unwrap();
        assert!(r.lengths.is_kraft_feasible());
        let lambda = r.lengths[0] as i32;
        let bound = 1.0 + ((1.0 - 0.49) / (1.0 - 2f64.powi(-lambda))).log2();
        for i in 1..p.len() {
            assert!(r.lengths[i] as f64 + p.probs()[i].log2() < bound);
        }
    }
}
