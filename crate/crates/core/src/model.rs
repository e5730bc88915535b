//! Core data types: distributions, weights, length vectors, codebooks and merge traces.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A probability mass function sorted into nonincreasing order.
///
/// `perm[i]` is the caller's (0-based) index of the `i`-th most probable symbol.
/// Ties keep the caller's order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<F> {
    probs: Vec<F>,
    perm: Vec<usize>,
}

impl<F: Scalar> Distribution<F> {
    pub fn new(values: &[F]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &v) in values.iter().enumerate() {
            if !(v > F::zero()) || !v.is_finite() {
                return Err(Error::NonPositiveProbability {
                    index,
                    value: v.as_f64(),
                });
            }
        }
        let sum = values.iter().fold(F::zero(), |acc, &v| acc + v);
        if (sum - F::one()).abs() > F::sum_tolerance() {
            return Err(Error::SumNotOne { sum: sum.as_f64() });
        }
        let mut perm: Vec<usize> = (0..values.len()).collect();
        // stable: equal probabilities stay in caller order
        perm.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(Ordering::Equal));
        let probs = perm.iter().map(|&i| values[i]).collect();
        Ok(Self { probs, perm })
    }

    /// Sorted probabilities, most probable first.
    pub fn probs(&self) -> &[F] {
        &self.probs
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// The largest probability, `p(1)`.
    pub fn p1(&self) -> F {
        self.probs[0]
    }

    /// Reorders a per-sorted-symbol sequence back into caller order.
    pub fn to_caller_order<T: Clone>(&self, sorted: &[T]) -> Vec<T> {
        assert_eq!(sorted.len(), self.len(), "sequence length must equal symbol count");
        let mut out: Vec<Option<T>> = vec![None; sorted.len()];
        for (i, item) in sorted.iter().enumerate() {
            out[self.perm[i]] = Some(item.clone());
        }
        out.into_iter().map(|x| x.expect("perm is a bijection")).collect()
    }

    /// Probabilities in the order the caller supplied them.
    pub fn caller_probs(&self) -> Vec<F> {
        self.to_caller_order(&self.probs)
    }

    pub(crate) fn check_len(&self, lengths: &LengthVector) -> Result<()> {
        if lengths.len() != self.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                got: lengths.len(),
            });
        }
        Ok(())
    }
}

/// Validates and sorts `values` into a [`Distribution`].
pub fn make_distribution<F: Scalar>(values: &[F]) -> Result<Distribution<F>> {
    Distribution::new(values)
}

/// Positive, nonincreasing leaf weights for the generalized Huffman merges.
///
/// Stored as base-2 logarithms so that weights such as `p^{1+d}` for large `d`
/// stay representable.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<F> {
    log2_weights: Vec<F>,
}

impl<F: Scalar> WeightVector<F> {
    pub fn from_weights(weights: &[F]) -> Result<Self> {
        if weights.iter().any(|&w| !(w > F::zero()) || !w.is_finite()) {
            return Err(Error::InvalidWeights);
        }
        Self::from_log2(weights.iter().map(|w| w.log2()).collect())
    }

    pub fn from_log2(log2_weights: Vec<F>) -> Result<Self> {
        if log2_weights.is_empty() {
            return Err(Error::EmptyInput);
        }
        if log2_weights.iter().any(|w| !w.is_finite())
            || log2_weights.windows(2).any(|w| w[0] < w[1])
        {
            return Err(Error::InvalidWeights);
        }
        Ok(Self { log2_weights })
    }

    pub fn from_distribution(p: &Distribution<F>) -> Self {
        Self {
            log2_weights: p.probs().iter().map(|x| x.log2()).collect(),
        }
    }

    pub fn log2_weights(&self) -> &[F] {
        &self.log2_weights
    }

    pub fn weights(&self) -> Vec<F> {
        self.log2_weights.iter().map(|w| w.exp2()).collect()
    }

    pub fn len(&self) -> usize {
        self.log2_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log2_weights.is_empty()
    }
}

/// Integer codeword lengths in bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthVector(Vec<u32>);

impl LengthVector {
    pub fn new(lengths: Vec<u32>) -> Self {
        Self(lengths)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_len(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Exact `Σ 2^{-l(i)}`.
    pub fn kraft_sum(&self) -> Ratio<BigUint> {
        kraft_sum(self)
    }

    pub fn is_kraft_feasible(&self) -> bool {
        self.kraft_compare() != Ordering::Greater
    }

    pub fn is_kraft_complete(&self) -> bool {
        self.kraft_compare() == Ordering::Equal
    }

    fn kraft_compare(&self) -> Ordering {
        let (num, max) = kraft_numerator(&self.0);
        num.cmp(&(BigUint::one() << max))
    }
}

impl From<Vec<u32>> for LengthVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for LengthVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// Numerator of the Kraft sum over the common denominator `2^max`.
fn kraft_numerator(lengths: &[u32]) -> (BigUint, u32) {
    let max = lengths.iter().copied().max().unwrap_or(0);
    let mut num = BigUint::zero();
    for &l in lengths {
        num += BigUint::one() << (max - l);
    }
    (num, max)
}

/// Exact Kraft sum `Σ 2^{-l(i)}` as a reduced rational.
pub fn kraft_sum(l: &LengthVector) -> Ratio<BigUint> {
    let (num, max) = kraft_numerator(l.as_slice());
    Ratio::new(num, BigUint::one() << max)
}

/// Label and value of the objective a codebook was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveValue {
    pub name: String,
    pub value: f64,
}

/// Codeword lengths together with concrete binary codewords.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    lengths: LengthVector,
    codewords: Vec<String>,
    objective: Option<ObjectiveValue>,
}

impl Codebook {
    /// Builds a codebook from explicit codewords, checking that they are binary
    /// strings and prefix-free.
    pub fn from_codewords(codewords: Vec<String>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidCodebook("no codewords".into()));
        }
        if let Some(bad) = codewords.iter().find(|c| c.bytes().any(|b| b != b'0' && b != b'1')) {
            return Err(Error::InvalidCodebook(format!("codeword {bad:?} is not a bit string")));
        }
        let mut sorted: Vec<&String> = codewords.iter().collect();
        sorted.sort();
        // in lexicographic order a prefix sorts immediately before some extension of it
        for pair in sorted.windows(2) {
            if pair[1].starts_with(pair[0].as_str()) {
                return Err(Error::InvalidCodebook(format!(
                    "{:?} is a prefix of {:?}",
                    pair[0], pair[1]
                )));
            }
        }
        let lengths = LengthVector::new(codewords.iter().map(|c| c.len() as u32).collect());
        Ok(Self {
            lengths,
            codewords,
            objective: None,
        })
    }

    pub fn with_objective(mut self, name: impl Into<String>, value: f64) -> Self {
        self.objective = Some(ObjectiveValue {
            name: name.into(),
            value,
        });
        self
    }

    pub fn lengths(&self) -> &LengthVector {
        &self.lengths
    }

    pub fn codewords(&self) -> &[String] {
        &self.codewords
    }

    pub fn objective(&self) -> Option<&ObjectiveValue> {
        self.objective.as_ref()
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

/// Assigns canonical codewords to `l`.
///
/// Symbols are visited in (length, index) order; the first codeword is all zeros
/// and each later one is the previous codeword plus one, padded with zeros to the
/// new length. Any order of `l` is accepted.
pub fn canonical_assign(l: &LengthVector) -> Result<Codebook> {
    if l.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !l.is_kraft_feasible() {
        return Err(Error::KraftViolation);
    }
    let lengths = l.as_slice();
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));

    let mut codewords = vec![String::new(); lengths.len()];
    let mut code: Vec<u8> = Vec::new();
    for (k, &sym) in order.iter().enumerate() {
        if k > 0 {
            // increment; Kraft feasibility guarantees no carry out of the top bit
            let mut pos = code.len();
            loop {
                assert!(pos > 0, "Kraft-feasible lengths never overflow");
                pos -= 1;
                if code[pos] == 0 {
                    code[pos] = 1;
                    break;
                }
                code[pos] = 0;
            }
        }
        code.resize(lengths[sym] as usize, 0);
        codewords[sym] = code.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    }
    Ok(Codebook {
        lengths: l.clone(),
        codewords,
        objective: None,
    })
}

/// One node of a merge tree. Leaves come first, indexed by sorted symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceNode<F> {
    pub log2_weight: F,
    pub prob_mass: F,
    pub depth: u32,
    pub children: Option<[usize; 2]>,
    pub symbol: Option<usize>,
}

impl<F: Scalar> TraceNode<F> {
    pub fn weight(&self) -> F {
        self.log2_weight.exp2()
    }
}

/// The combination tree produced by a Huffman-style merge.
///
/// Nodes `0..n` are the leaves; internal nodes follow in the order they were
/// created, so their weights read in index order are the merge-time weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTrace<F> {
    nodes: Vec<TraceNode<F>>,
    leaves: usize,
}

impl<F: Scalar> MergeTrace<F> {
    pub(crate) fn new(nodes: Vec<TraceNode<F>>, leaves: usize) -> Self {
        debug_assert_eq!(nodes.len(), 2 * leaves - 1);
        Self { nodes, leaves }
    }

    pub fn nodes(&self) -> &[TraceNode<F>] {
        &self.nodes
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn root(&self) -> &TraceNode<F> {
        self.nodes.last().expect("trace has at least one node")
    }

    pub fn root_log2_weight(&self) -> F {
        self.root().log2_weight
    }

    /// `w_root`.
    pub fn root_weight(&self) -> F {
        self.root().weight()
    }

    /// Internal nodes in creation order.
    pub fn merges(&self) -> &[TraceNode<F>] {
        &self.nodes[self.leaves..]
    }

    /// Leaf depths, indexed by sorted symbol.
    pub fn leaf_depths(&self) -> LengthVector {
        LengthVector::new(self.nodes[..self.leaves].iter().map(|n| n.depth).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[u32]) -> LengthVector {
        LengthVector::new(v.to_vec())
    }

    #[test]
    fn distribution_sorts_and_records_permutation() {
        let p = Distribution::new(&[0.2, 0.5, 0.3]).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.3, 0.2]);
        assert_eq!(p.perm(), &[1, 2, 0]);
        assert_eq!(p.caller_probs(), vec![0.2, 0.5, 0.3]);
    }

    #[test]
    fn degenerate_source() {
        let p = Distribution::new(&[1.0]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.p1(), 1.0);
    }

    #[test]
    fn distribution_errors() {
        assert!(matches!(Distribution::<f64>::new(&[]), Err(Error::EmptyInput)));
        assert!(matches!(
            Distribution::new(&[0.5, 0.5, 0.1]),
            Err(Error::SumNotOne { .. })
        ));
        assert!(matches!(
            Distribution::new(&[1.5, -0.5]),
            Err(Error::NonPositiveProbability { index: 1, .. })
        ));
        assert!(matches!(
            Distribution::new(&[f64::NAN, 1.0]),
            Err(Error::NonPositiveProbability { index: 0, .. })
        ));
    }

    #[test]
    fn ties_keep_caller_order() {
        let p = Distribution::new(&[0.25, 0.5, 0.25]).unwrap();
        assert_eq!(p.perm(), &[1, 0, 2]);
    }

    #[test]
    fn kraft_sums_are_exact() {
        let r = |n: u32, d: u32| Ratio::new(BigUint::from(n), BigUint::from(d));
        assert_eq!(kraft_sum(&lv(&[1, 2, 2])), r(1, 1));
        assert_eq!(kraft_sum(&lv(&[2, 2, 2])), r(3, 4));
        assert_eq!(kraft_sum(&lv(&[1, 1, 2])), r(5, 4));
        assert!(!lv(&[1, 1, 2]).is_kraft_feasible());
        assert!(lv(&[1, 2, 2]).is_kraft_complete());
        assert!(lv(&[0]).is_kraft_complete());
        // beyond any machine word
        let mut long: Vec<u32> = (1..200).collect();
        long.push(199);
        assert!(LengthVector::new(long).is_kraft_complete());
    }

    #[test]
    fn canonical_codes() {
        let code = |v: &[u32]| canonical_assign(&lv(v)).unwrap().codewords().to_vec();
        assert_eq!(code(&[1, 2, 2]), ["0", "10", "11"]);
        assert_eq!(code(&[2, 2, 2, 2]), ["00", "01", "10", "11"]);
        assert_eq!(code(&[1, 2, 3, 3]), ["0", "10", "110", "111"]);
        assert_eq!(code(&[0]), [""]);
        assert_eq!(code(&[2, 1, 2]), ["10", "0", "11"]);
        assert_eq!(code(&[2, 2, 2]), ["00", "01", "10"]);
        assert!(matches!(canonical_assign(&lv(&[1, 1, 2])), Err(Error::KraftViolation)));
    }

    #[test]
    fn codebook_rejects_prefixes() {
        assert!(Codebook::from_codewords(vec!["0".into(), "01".into()]).is_err());
        assert!(Codebook::from_codewords(vec!["0".into(), "2".into()]).is_err());
        assert!(Codebook::from_codewords(vec!["1".into(), "01".into(), "00".into()]).is_ok());
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::from_weights(&[0.5, 0.25, 0.25]).is_ok());
        assert!(WeightVector::from_weights(&[0.25, 0.5]).is_err());
        assert!(WeightVector::from_weights(&[0.5, 0.0]).is_err());
        let w = WeightVector::from_weights(&[4.0, 2.0]).unwrap();
        assert_eq!(w.log2_weights(), &[2.0, 1.0]);
    }
}
