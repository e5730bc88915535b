//! Exhaustive ground truth for small alphabets.
//!
//! Every objective handled here is nondecreasing in each codeword length, and
//! any Kraft-feasible length vector is dominated componentwise by one whose
//! entries are at most `n - 1` (shorten codewords until the tree is full; a full
//! binary tree with `n` leaves has depth at most `n - 1`). Sorting lengths
//! against nonincreasing probabilities never hurts either, so enumerating
//! nondecreasing vectors with entries in `[0, n-1]` loses no optimum.

use crate::error::{Error, Result};
use crate::model::{Distribution, LengthVector};
use crate::objectives::Objective;
use crate::scalar::Scalar;

pub const MAX_ENUMERATION: usize = 16;
pub const MAX_BRUTE_FORCE: usize = 12;
pub const MAX_ALL_OPTIMA: usize = 9;

/// Lexicographic stream of every nondecreasing, Kraft-feasible length vector of
/// size `n` with entries at most `n - 1`.
#[derive(Debug, Clone)]
pub struct LengthVectors {
    n: usize,
    max_len: u32,
    /// `2^{max_len}`: the Kraft budget in units of `2^{-max_len}`.
    budget: u64,
    current: Vec<u32>,
    /// `prefix_cost[i]` is the cost of `current[..i]`.
    prefix_cost: Vec<u64>,
    started: bool,
    done: bool,
}

impl LengthVectors {
    fn cost(&self, l: u32) -> u64 {
        1u64 << (self.max_len - l)
    }

    /// Whether `current[..i]` followed by `l` at position `i` can still be completed.
    fn fits(&self, i: usize, l: u32) -> bool {
        let remaining = (self.n - i - 1) as u64;
        self.prefix_cost[i] + self.cost(l) + remaining <= self.budget
    }

    fn set(&mut self, i: usize, l: u32) {
        self.current[i] = l;
        self.prefix_cost[i + 1] = self.prefix_cost[i] + self.cost(l);
    }

    /// Fills `current[from..]` with the lexicographically smallest feasible tail.
    fn complete_from(&mut self, from: usize) {
        for i in from..self.n {
            let lo = if i == 0 { 0 } else { self.current[i - 1] };
            let l = (lo..=self.max_len)
                .find(|&l| self.fits(i, l))
                .expect("a feasible prefix always has a feasible tail");
            self.set(i, l);
        }
    }

    fn advance(&mut self) -> bool {
        // raising any entry lowers its cost, so the prefix stays feasible
        for k in (0..self.n).rev() {
            if self.current[k] < self.max_len {
                let l = self.current[k] + 1;
                self.set(k, l);
                self.complete_from(k + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for LengthVectors {
    type Item = LengthVector;

    fn next(&mut self) -> Option<LengthVector> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete_from(0);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(LengthVector::new(self.current.clone()))
    }
}

/// Enumerates the exhaustive search domain for `n` symbols.
pub fn enumerate_length_vectors(n: usize) -> Result<LengthVectors> {
    if n > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let max_len = (n - 1) as u32;
    Ok(LengthVectors {
        n,
        max_len,
        budget: 1u64 << max_len,
        current: vec![0; n],
        prefix_cost: vec![0; n + 1],
        started: false,
        done: false,
    })
}

/// A minimizer found by exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum<F> {
    pub value: F,
    /// The lexicographically first minimizer.
    pub lengths: LengthVector,
}

/// The full set of co-optimal vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimaSet<F> {
    pub objective_name: String,
    pub optimum_value: F,
    /// Every vector within the comparison tolerance of the optimum, in
    /// lexicographic order.
    pub vectors: Vec<LengthVector>,
}

/// Minimizes every objective in `objectives` over the same enumeration pass.
pub fn brute_force_optima<F: Scalar>(
    p: &Distribution<F>,
    objectives: &[Objective<F>],
) -> Result<Vec<Optimum<F>>> {
    let n = p.len();
    if n > MAX_BRUTE_FORCE {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_FORCE,
        });
    }
    let mut best: Vec<Option<Optimum<F>>> = vec![None; objectives.len()];
    for l in enumerate_length_vectors(n)? {
        for (slot, objective) in best.iter_mut().zip(objectives) {
            let value = objective.evaluate(p, &l)?;
            match slot {
                Some(b) if b.value <= value => {}
                _ => {
                    *slot = Some(Optimum {
                        value,
                        lengths: l.clone(),
                    })
                }
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|b| b.expect("domain is nonempty"))
        .collect())
}

/// Global minimum of `objective` for `p` (`n ≤ 12`).
pub fn brute_force_optimum<F: Scalar>(p: &Distribution<F>, objective: Objective<F>) -> Result<Optimum<F>> {
    Ok(brute_force_optima(p, &[objective])?.remove(0))
}

/// Every nondecreasing vector attaining the optimum within the scalar's
/// comparison tolerance (`n ≤ 9`).
pub fn all_optima<F: Scalar>(p: &Distribution<F>, objective: Objective<F>) -> Result<OptimaSet<F>> {
    let n = p.len();
    if n > MAX_ALL_OPTIMA {
        return Err(Error::TooLarge {
            n,
            max: MAX_ALL_OPTIMA,
        });
    }
    let scored = enumerate_length_vectors(n)?
        .map(|l| Ok((objective.evaluate(p, &l)?, l)))
        .collect::<Result<Vec<_>>>()?;
    let optimum_value = scored
        .iter()
        .map(|(v, _)| *v)
        .fold(F::infinity(), F::min);
    let tol = F::eq_tolerance();
    let vectors = scored
        .into_iter()
        .filter(|(v, _)| *v <= optimum_value + tol)
        .map(|(_, l)| l)
        .collect();
    Ok(OptimaSet {
        objective_name: objective.name(),
        optimum_value,
        vectors,
    })
}
