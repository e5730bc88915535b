//! Code construction: Shannon codes and the Huffman-style merge algorithms.

mod huffman;
mod merge;
mod shannon;

pub use huffman::{dth_exp_code, exp_huffman, huffman_average, minimax_huffman};
pub use merge::{merge_with_heap, merge_with_two_queues, CombineRule};
pub use shannon::{first_order_shannon, shannon_code};

use crate::model::{LengthVector, MergeTrace};

/// Lengths produced by a coder, indexed by sorted symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct CoderResult<F> {
    pub lengths: LengthVector,
    /// The merge tree; `None` for the Shannon coders.
    pub trace: Option<MergeTrace<F>>,
    /// The objective the coder targets, evaluated on `lengths`.
    pub objective_value: F,
}
