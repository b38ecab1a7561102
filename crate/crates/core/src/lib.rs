//! Increasing trees, permutations in cycle and word form, and an explicit
//! bijection between derangements of size `n` and increasing trees of size
//! `n` with a marked vertex of rank 1.
//!
//! ```
//! use derangetree_core::{forward, inverse, CycleDecomposition};
//!
//! let p: CycleDecomposition = "(0 5 3)(1 4 2)".parse().unwrap();
//! let tree = forward(&p).unwrap();
//! assert_eq!(tree.to_string(), "size=6;parents=0,1,0,1,0;mark=0");
//! assert_eq!(inverse(&tree).unwrap(), p);
//! ```

pub mod bijection;
pub mod cycles;
pub mod dot;
pub mod enumerate;
mod error;
pub mod marked;
pub mod relabel;
pub mod tree;
pub mod word;

/// Vertex labels and permutation entries.
pub type Label = usize;

pub use bijection::{
    case2a_rejoin, case2a_restructure, classify_derangement, classify_tree, forward, forward_with_case, inverse,
    CaseTag,
};
pub use cycles::CycleDecomposition;
pub use dot::render_dot;
pub use enumerate::{
    case_counts, count_rank_k, derangements, increasing_trees, marked_trees, rank_count_table, rank_profile,
    recurrence_check, verify_bijection, CaseCounts, FailureKind, RankCountRow, RecurrenceRow, RoundTripFailure,
    VerificationReport, DEFAULT_VERIFY_LIMIT, MAX_VERIFY_LIMIT,
};
pub use error::{Error, Result};
pub use marked::MarkedTree;
pub use relabel::Relabeling;
pub use tree::{IncreasingTree, Rank, Ranks};
pub use word::{perm_to_tree, tree_to_perm, PermWord};
