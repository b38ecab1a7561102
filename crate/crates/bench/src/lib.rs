//! Benchmarks live in `benches/`; this crate only exists to host them.
//!
//! Run with `cargo bench -p derangetree-bench`.

use derangetree_core::{derangements, marked_trees, CycleDecomposition, MarkedTree};

/// All derangements of size `n`, collected for repeated benchmark passes.
pub fn derangement_corpus(n: usize) -> Vec<CycleDecomposition> {
    derangements(n).collect()
}

/// All marked trees of size `n`.
pub fn marked_tree_corpus(n: usize) -> Vec<MarkedTree> {
    marked_trees(n).expect("n is positive").collect()
}
