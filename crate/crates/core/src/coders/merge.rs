//! Generalized Huffman merging.
//!
//! Items are kept in a conceptual queue ordered by nondecreasing weight from head
//! to tail. Leaves enter with the least probable symbol at the head. Each step
//! removes the two head items and replaces them with one compound item whose
//! weight is given by a [`CombineRule`]. A compound item goes behind every queued
//! item of equal weight, so on ties leaves win over compounds and older compounds
//! win over newer ones.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use crate::model::{MergeTrace, TraceNode};
use crate::scalar::{log2_add, Scalar};

/// How two weights combine, expressed on `lg w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CombineRule<F> {
    /// `w(i) + w(j)`: classic Huffman.
    Sum,
    /// `a w(i) + a w(j)` with `lg a` given.
    Exponential { lg_base: F },
    /// `2 max(w(i), w(j))`: minimax pointwise redundancy.
    DoubleMax,
}

impl<F: Scalar> CombineRule<F> {
    pub fn combine(&self, x: F, y: F) -> F {
        match *self {
            CombineRule::Sum => log2_add(x, y),
            CombineRule::Exponential { lg_base } => lg_base + log2_add(x, y),
            CombineRule::DoubleMax => F::one() + x.max(y),
        }
    }

    /// True when successive compound weights can never decrease, which is what
    /// the two-queue procedure needs.
    pub fn is_monotone(&self) -> bool {
        match *self {
            CombineRule::Sum | CombineRule::DoubleMax => true,
            CombineRule::Exponential { lg_base } => lg_base >= F::zero(),
        }
    }
}

fn leaf_nodes<F: Scalar>(log2_weights: &[F], masses: &[F]) -> Vec<TraceNode<F>> {
    assert_eq!(log2_weights.len(), masses.len());
    assert!(!log2_weights.is_empty());
    log2_weights
        .iter()
        .zip(masses)
        .enumerate()
        .map(|(i, (&w, &m))| TraceNode {
            log2_weight: w,
            prob_mass: m,
            depth: 0,
            children: None,
            symbol: Some(i),
        })
        .collect()
}

fn push_compound<F: Scalar>(nodes: &mut Vec<TraceNode<F>>, rule: &CombineRule<F>, a: usize, b: usize) -> usize {
    let node = TraceNode {
        log2_weight: rule.combine(nodes[a].log2_weight, nodes[b].log2_weight),
        prob_mass: nodes[a].prob_mass + nodes[b].prob_mass,
        depth: 0,
        children: Some([a, b]),
        symbol: None,
    };
    nodes.push(node);
    nodes.len() - 1
}

fn finish<F: Scalar>(mut nodes: Vec<TraceNode<F>>, leaves: usize) -> MergeTrace<F> {
    // children always precede their parent, so a reverse sweep sees parents first
    for k in (0..nodes.len()).rev() {
        if let Some([a, b]) = nodes[k].children {
            let depth = nodes[k].depth + 1;
            nodes[a].depth = depth;
            nodes[b].depth = depth;
        }
    }
    MergeTrace::new(nodes, leaves)
}

/// Linear-time merge for monotone rules.
///
/// `log2_weights` must be nonincreasing (most probable first). One queue holds
/// the leaves, the other the compound items in creation order; for a monotone
/// rule the second queue is automatically sorted.
pub fn merge_with_two_queues<F: Scalar>(
    log2_weights: &[F],
    masses: &[F],
    rule: CombineRule<F>,
) -> MergeTrace<F> {
    assert!(rule.is_monotone(), "two-queue merging needs a monotone rule");
    let n = log2_weights.len();
    let mut nodes = leaf_nodes(log2_weights, masses);
    let mut next_leaf = n; // leaves n-1, n-2, ..., 0 are popped in that order
    let mut compounds: VecDeque<usize> = VecDeque::with_capacity(n);

    let mut pop = |nodes: &Vec<TraceNode<F>>, compounds: &mut VecDeque<usize>| -> usize {
        let leaf = next_leaf.checked_sub(1);
        match (leaf, compounds.front()) {
            (Some(l), Some(&c)) if nodes[l].log2_weight > nodes[c].log2_weight => {
                compounds.pop_front();
                c
            }
            (Some(l), _) => {
                next_leaf = l;
                l
            }
            (None, Some(_)) => compounds.pop_front().expect("front exists"),
            (None, None) => unreachable!("queue holds at least two items while merging"),
        }
    };

    for _ in 1..n {
        let a = pop(&nodes, &mut compounds);
        let b = pop(&nodes, &mut compounds);
        let c = push_compound(&mut nodes, &rule, a, b);
        compounds.push_back(c);
    }
    finish(nodes, n)
}

#[derive(Debug, Clone, Copy)]
struct Keyed<F> {
    log2_weight: F,
    seq: usize,
    node: usize,
}

impl<F: Scalar> PartialEq for Keyed<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<F: Scalar> Eq for Keyed<F> {}

impl<F: Scalar> PartialOrd for Keyed<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Scalar> Ord for Keyed<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.log2_weight
            .partial_cmp(&other.log2_weight)
            .unwrap_or(Ordering::Equal)
            .then(self.seq.cmp(&other.seq))
    }
}

/// Priority-queue merge valid for any rule, including the decaying exponential
/// rule where a compound can weigh less than its children.
///
/// Ties are broken exactly as in [`merge_with_two_queues`].
pub fn merge_with_heap<F: Scalar>(
    log2_weights: &[F],
    masses: &[F],
    rule: CombineRule<F>,
) -> MergeTrace<F> {
    let n = log2_weights.len();
    let mut nodes = leaf_nodes(log2_weights, masses);
    let mut heap: BinaryHeap<Reverse<Keyed<F>>> = (0..n)
        .map(|i| {
            Reverse(Keyed {
                log2_weight: log2_weights[i],
                seq: n - 1 - i,
                node: i,
            })
        })
        .collect();
    let mut seq = n;
    while heap.len() > 1 {
        let Reverse(a) = heap.pop().expect("len > 1");
        let Reverse(b) = heap.pop().expect("len > 1");
        let c = push_compound(&mut nodes, &rule, a.node, b.node);
        heap.push(Reverse(Keyed {
            log2_weight: nodes[c].log2_weight,
            seq,
            node: c,
        }));
        seq += 1;
    }
    finish(nodes, n)
}
