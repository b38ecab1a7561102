//! The recursive bijection between derangements of `{0, …, n-1}` and
//! increasing trees of size `n` with a marked vertex of rank 1.
//!
//! Write `top = n - 1`. The forward map splits on how `top` sits in the
//! derangement `p`:
//!
//! * `top` in a cycle of length at least 3: delete it, map the smaller
//!   derangement, and hang `top` under `v = p⁻¹(top)`. If that costs the old
//!   mark its rank-1 status, `v` takes the mark instead.
//! * `top` in a 2-cycle `(j top)`: drop the cycle, map the rest (relabeled to
//!   `{0, …, n-3}`), then put `j` back so that it ends up marked with `top` as
//!   a child. When the old mark `k` is smaller than `j` this is a plain
//!   attachment; otherwise the tree around the root-to-`k` path is rearranged
//!   by [`case2a_restructure`].
//!
//! The inverse recognises which construction produced a tree from local
//! structure around `top` and the mark ([`classify_tree`]) and undoes it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycles::CycleDecomposition;
use crate::error::{Error, Result};
use crate::marked::MarkedTree;
use crate::relabel::Relabeling;
use crate::tree::IncreasingTree;
use crate::Label;

/// Which construction step builds (or unbuilds) a given pair.
///
/// `C1*` cover derangements where `n-1` is in a longer cycle, `C2*` those
/// where it is in a 2-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Base2,
    Base3,
    /// `n-1` hangs from the mark, which keeps a leaf child besides it.
    C1a,
    /// `n-1` hangs from a vertex that is neither the mark nor its child.
    C1b,
    /// `n-1` hangs from a child of the mark; the mark keeps rank 1.
    #[serde(rename = "C1cI")]
    C1cI,
    /// `n-1` hangs from a child of the old mark, which loses rank 1; the
    /// mark moves down to `n-1`'s parent.
    #[serde(rename = "C1cII")]
    C1cII,
    /// `j` was above the old mark: the root-to-mark path is rearranged.
    C2a,
    /// `j` was below the old mark: `j` and `n-1` are hung under it.
    C2b,
}

impl CaseTag {
    pub const ALL: [CaseTag; 8] = [
        CaseTag::Base2,
        CaseTag::Base3,
        CaseTag::C1a,
        CaseTag::C1b,
        CaseTag::C1cI,
        CaseTag::C1cII,
        CaseTag::C2a,
        CaseTag::C2b,
    ];

    /// The six recursive cases, in the order used by reports.
    pub const RECURSIVE: [CaseTag; 6] = [
        CaseTag::C1a,
        CaseTag::C1b,
        CaseTag::C1cI,
        CaseTag::C1cII,
        CaseTag::C2a,
        CaseTag::C2b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Base2 => "Base2",
            CaseTag::Base3 => "Base3",
            CaseTag::C1a => "C1a",
            CaseTag::C1b => "C1b",
            CaseTag::C1cI => "C1cI",
            CaseTag::C1cII => "C1cII",
            CaseTag::C2a => "C2a",
            CaseTag::C2b => "C2b",
        }
    }

    /// Cases in which `n-1` ends up as a child of the mark.
    pub fn top_under_mark(self) -> bool {
        matches!(self, CaseTag::C1a | CaseTag::C1cII | CaseTag::C2a | CaseTag::C2b)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Checks that `p` is a derangement of `{0, …, n-1}` with `n >= 2`.
fn check_derangement(p: &CycleDecomposition) -> Result<usize> {
    let n = p.size();
    p.expect_standard(n)?;
    p.expect_derangement()?;
    if n < 2 {
        return Err(Error::Contract("derangements need at least two labels".into()));
    }
    Ok(n)
}

fn invariant(e: Error) -> Error {
    match e {
        Error::Invariant(_) => e,
        other => Error::Invariant(other.to_string()),
    }
}

/// Maps a derangement to its marked tree.
pub fn forward(p: &CycleDecomposition) -> Result<MarkedTree> {
    forward_with_case(p).map(|(mt, _)| mt)
}

/// The case governing `forward(p)`.
///
/// The subcases of the first kind depend on the tree built for the smaller
/// derangement, so this runs the recursion.
pub fn classify_derangement(p: &CycleDecomposition) -> Result<CaseTag> {
    forward_with_case(p).map(|(_, case)| case)
}

/// [`forward`] together with the case that produced the result.
pub fn forward_with_case(p: &CycleDecomposition) -> Result<(MarkedTree, CaseTag)> {
    let n = check_derangement(p)?;
    build(p, n)
}

fn build(p: &CycleDecomposition, n: usize) -> Result<(MarkedTree, CaseTag)> {
    match n {
        2 => Ok((base_tree(&[0], 0), CaseTag::Base2)),
        3 if p.image(0) == Some(1) => Ok((base_tree(&[0, 1], 1), CaseTag::Base3)),
        3 => Ok((base_tree(&[0, 0], 0), CaseTag::Base3)),
        _ => {
            let top = n - 1;
            let cycle = p.cycle_of(top).expect("top label is present");
            if cycle.len() > 2 {
                build_long_cycle(p, top)
            } else {
                let j = if cycle[0] == top { cycle[1] } else { cycle[0] };
                build_two_cycle(p, top, j)
            }
        }
    }
}

fn base_tree(parents: &[Label], mark: Label) -> MarkedTree {
    MarkedTree::new(IncreasingTree::from_parents(parents).unwrap(), mark).unwrap()
}

fn build_long_cycle(p: &CycleDecomposition, top: Label) -> Result<(MarkedTree, CaseTag)> {
    let v = p.preimage(top).unwrap();
    let (inner, _) = build(&p.without(top)?, top)?;
    let k = inner.mark();
    let mut tree = inner.into_tree();
    tree.insert_leaf(top, v).map_err(invariant)?;

    let case = if v == k {
        CaseTag::C1a
    } else if tree.parent(v) == Some(k) {
        if tree.rank(k)? == 1 {
            CaseTag::C1cI
        } else {
            CaseTag::C1cII
        }
    } else {
        CaseTag::C1b
    };
    let mark = if case == CaseTag::C1cII { v } else { k };
    Ok((MarkedTree::new(tree, mark).map_err(invariant)?, case))
}

fn build_two_cycle(p: &CycleDecomposition, top: Label, j: Label) -> Result<(MarkedTree, CaseTag)> {
    let (_, rest) = p.split_cycle(top)?;
    let relabeling = Relabeling::order_isomorphism(rest.ground_set())?;
    let (inner, _) = build(&relabeling.relabel_cycles(&rest)?, top - 1)?;
    let k = relabeling.backward(inner.mark())?;
    let mut tree = relabeling.restore_tree(inner.tree())?;

    let case = if k < j {
        tree.insert_leaf(j, k).map_err(invariant)?;
        CaseTag::C2b
    } else {
        tree = case2a_restructure(&tree, j, k)?;
        CaseTag::C2a
    };
    tree.insert_leaf(top, j).map_err(invariant)?;
    Ok((MarkedTree::new(tree, j).map_err(invariant)?, case))
}

/// Inserts the new label `j` above the rank-1 vertex `k > j` and reshapes the
/// tree so that the depth search walk from `j` meets `k` before any other
/// rank-1 vertex.
///
/// `j` first goes on the root-to-`k` path at the only place the increasing
/// order allows (as the new root if it is below every path label). Then,
/// descending from `j` toward `k`, a path vertex `w` gives up the child
/// subtree leading to `k` (re-attached under `j`) when `w` has rank 1, or when
/// that child is not the greatest child of `w`. Ranks are always taken in the
/// tree as modified so far.
pub fn case2a_restructure(t: &IncreasingTree, j: Label, k: Label) -> Result<IncreasingTree> {
    if k <= j {
        return Err(Error::Contract(format!(
            "restructure needs k > j, got k = {k}, j = {j}"
        )));
    }
    if t.contains(j) {
        return Err(Error::RepeatedLabel(j));
    }
    let rank = t.rank(k)?;
    if rank != 1 {
        return Err(Error::MarkNotRankOne {
            mark: k,
            rank: rank.get(),
        });
    }

    let mut tree = t.clone();
    let path = tree.path_from_root(k)?;
    match path.iter().rposition(|&x| x < j) {
        None => tree.insert_root(j)?,
        Some(i) => {
            tree.insert_leaf(j, path[i])?;
            tree.reparent(path[i + 1], j)?;
        }
    }

    let mut w = j;
    while w != k {
        let ranks = tree.ranks();
        let mut next = k;
        while tree.parent(next) != Some(w) {
            next = tree.parent(next).expect("k lies below w");
        }
        let greatest = *tree.children(w).last().unwrap();
        let w_rank = ranks.get(w).unwrap();
        if (w_rank == 1 || next != greatest) && w != j {
            tree.reparent(next, j)?;
        }
        w = next;
    }
    Ok(tree)
}

/// Which construction produced `mt`, read off the neighbourhood of `n-1` and
/// the mark.
pub fn classify_tree(mt: &MarkedTree) -> Result<CaseTag> {
    let tree = mt.tree();
    let n = tree.size();
    if !tree.is_standard() {
        return Err(Error::Contract("tree labels must be 0..n".into()));
    }
    match n {
        0 | 1 => return Err(Error::Contract("marked trees have at least two vertices".into())),
        2 => return Ok(CaseTag::Base2),
        3 => return Ok(CaseTag::Base3),
        _ => {}
    }
    let top = n - 1;
    let m = mt.mark();
    let v = tree.parent(top).expect("top is not the root");
    if v != m {
        return Ok(if tree.parent(v) == Some(m) {
            CaseTag::C1cI
        } else {
            CaseTag::C1b
        });
    }
    let ranks = tree.ranks();
    let siblings: Vec<Label> = tree.children(m).into_iter().filter(|&c| c != top).collect();
    if siblings.is_empty() {
        // m has rank 1 and its only child is top, so m is not the root.
        let parent = tree.parent(m).expect("mark is not the root when n > 2");
        return match ranks.get(parent).unwrap().get() {
            1 => Ok(CaseTag::C2b),
            2 => Ok(CaseTag::C1cII),
            r => Err(Error::Invariant(format!("parent {parent} of the mark has rank {r}"))),
        };
    }
    if siblings.iter().any(|&c| ranks.get(c).unwrap().is_leaf()) {
        Ok(CaseTag::C1a)
    } else {
        Ok(CaseTag::C2a)
    }
}

/// Maps a marked tree back to its derangement.
pub fn inverse(mt: &MarkedTree) -> Result<CycleDecomposition> {
    let case = classify_tree(mt)?;
    let n = mt.size();
    match case {
        CaseTag::Base2 => return CycleDecomposition::new(vec![vec![0, 1]]),
        CaseTag::Base3 if mt.mark() == 1 => return CycleDecomposition::new(vec![vec![0, 1, 2]]),
        CaseTag::Base3 => return CycleDecomposition::new(vec![vec![0, 2, 1]]),
        _ => {}
    }

    let top = n - 1;
    let m = mt.mark();
    let mut tree = mt.tree().clone();
    let v = tree.parent(top).unwrap();
    tree.remove_leaf(top)?;

    match case {
        CaseTag::C1a | CaseTag::C1b | CaseTag::C1cI => {
            let smaller = inverse(&MarkedTree::new(tree, m).map_err(invariant)?)?;
            smaller.insert_after(v, top)
        }
        CaseTag::C1cII => {
            let old_mark = tree.parent(m).unwrap();
            let smaller = inverse(&MarkedTree::new(tree, old_mark).map_err(invariant)?)?;
            smaller.insert_after(m, top)
        }
        CaseTag::C2b => {
            let old_mark = tree.parent(m).unwrap();
            tree.remove_leaf(m)?;
            finish_two_cycle(tree, old_mark, m, top)
        }
        CaseTag::C2a => {
            let old_mark = case2a_rejoin(&mut tree, m)?;
            finish_two_cycle(tree, old_mark, m, top)
        }
        CaseTag::Base2 | CaseTag::Base3 => unreachable!(),
    }
}

/// Undoes [`case2a_restructure`] on `tree` (with `n-1` already removed),
/// leaving `j`'s place taken by its smallest child. Returns the old mark.
///
/// The old mark is the first rank-1 vertex after `j` in the walk from `j`.
/// The children `c_1 < … < c_m` of `j` are then folded back from the largest:
/// `c_i` is re-hung under the first vertex `q` of the walk from `c_{i-1}` that
/// has rank 1, or rank at least 2 and a child greater than `c_i`.
pub fn case2a_rejoin(tree: &mut IncreasingTree, j: Label) -> Result<Label> {
    let ranks = tree.ranks();
    let old_mark = tree
        .walk(j)?
        .into_iter()
        .skip(1)
        .find(|&x| ranks.get(x).unwrap() == 1)
        .ok_or_else(|| Error::Invariant(format!("no rank-1 vertex below {j}")))?;

    let kids = tree.children(j);
    for i in (1..kids.len()).rev() {
        let (host, moved) = (kids[i - 1], kids[i]);
        let ranks = tree.ranks();
        let q = tree
            .walk(host)?
            .into_iter()
            .find(|&x| {
                let r = ranks.get(x).unwrap().get();
                r == 1 || (r >= 2 && tree.children(x).iter().any(|&c| c > moved))
            })
            .ok_or_else(|| Error::Invariant(format!("no attachment point for {moved} below {host}")))?;
        if q >= moved {
            return Err(Error::Invariant(format!(
                "attachment point {q} for {moved} would break the increasing order"
            )));
        }
        tree.reparent(moved, q)?;
    }
    tree.contract(j)?;
    Ok(old_mark)
}

/// Relabels the reduced tree, inverts it, restores labels and adds `(j top)`.
fn finish_two_cycle(tree: IncreasingTree, mark: Label, j: Label, top: Label) -> Result<CycleDecomposition> {
    let relabeling = Relabeling::order_isomorphism(tree.labels().to_vec())?;
    let reduced = MarkedTree::new(relabeling.relabel_tree(&tree)?, relabeling.forward(mark)?).map_err(invariant)?;
    let smaller = relabeling.restore_cycles(&inverse(&reduced)?)?;
    smaller.with_cycle(vec![j, top])
}
