//! Brute-force oracles shared by the integration tests. They deliberately
//! avoid the library's own traversal and rank code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use derangetree_core::{IncreasingTree, Label};

pub fn children_map(t: &IncreasingTree) -> BTreeMap<Label, Vec<Label>> {
    let mut map: BTreeMap<Label, Vec<Label>> = t.labels().iter().map(|&v| (v, Vec::new())).collect();
    for &v in t.labels() {
        if let Some(p) = t.parent(v) {
            map.get_mut(&p).unwrap().push(v);
        }
    }
    map
}

/// Shortest distance from `v` down to a leaf, by breadth-first search.
pub fn oracle_rank(t: &IncreasingTree, v: Label) -> usize {
    let kids = children_map(t);
    let mut frontier = vec![v];
    for depth in 0.. {
        if frontier.iter().any(|x| kids[x].is_empty()) {
            return depth;
        }
        frontier = frontier.iter().flat_map(|x| kids[x].iter().copied()).collect();
    }
    unreachable!()
}

/// Recursive greatest-child-first walk.
pub fn oracle_walk(t: &IncreasingTree, start: Label) -> Vec<Label> {
    fn go(kids: &BTreeMap<Label, Vec<Label>>, v: Label, out: &mut Vec<Label>) {
        out.push(v);
        for &c in kids[&v].iter().rev() {
            go(kids, c, out);
        }
    }
    let kids = children_map(t);
    let mut out = Vec::new();
    go(&kids, start, &mut out);
    out
}

/// First vertex after `start` in the walk from `start` that has rank 1.
pub fn first_rank_one_after(t: &IncreasingTree, start: Label) -> Option<Label> {
    oracle_walk(t, start)
        .into_iter()
        .skip(1)
        .find(|&v| oracle_rank(t, v) == 1)
}

/// All permutations of `items` by recursive selection.
pub fn permutations(items: &[Label]) -> Vec<Vec<Label>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Derangements of `0..n` as image vectors, by filtering every permutation.
pub fn brute_derangements(n: usize) -> Vec<Vec<Label>> {
    let items: Vec<Label> = (0..n).collect();
    permutations(&items)
        .into_iter()
        .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
        .collect()
}

/// Every increasing tree on `0..n` by choosing each parent independently.
pub fn brute_trees(n: usize) -> Vec<IncreasingTree> {
    let mut choices: Vec<Vec<Label>> = vec![vec![]];
    for v in 1..n {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                (0..v).map(move |p| {
                    let mut c = c.clone();
                    c.push(p);
                    c
                })
            })
            .collect();
    }
    choices
        .iter()
        .map(|c| IncreasingTree::from_parents(c).unwrap())
        .collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The six leaves of the classification diagram for a marked tree of size
/// `n >= 4`, evaluated independently: (C1b, C1cI, C2b, C1cII, C1a, C2a).
pub fn diagram_leaves(t: &IncreasingTree, mark: Label) -> [bool; 6] {
    let n = t.size();
    let top = n - 1;
    let kids = children_map(t);
    let v = t.parent(top).unwrap();
    let v_is_mark = v == mark;
    let v_child_of_mark = kids[&mark].contains(&v);
    let only_child = kids[&mark] == vec![top];
    let parent_rank = t.parent(mark).map(|p| oracle_rank(t, p));
    let leaf_sibling = kids[&mark].iter().any(|&c| c != top && kids[&c].is_empty());
    [
        !v_is_mark && !v_child_of_mark,
        v_child_of_mark,
        v_is_mark && only_child && parent_rank == Some(1),
        v_is_mark && only_child && parent_rank == Some(2),
        v_is_mark && !only_child && leaf_sibling,
        v_is_mark && !only_child && !leaf_sibling,
    ]
}
