//! Increasing trees stored as parent tables.
//!
//! A tree is a set of distinct labels together with a parent for every label
//! except the smallest, which is the root. The increasing property
//! `parent(v) < v` makes the parent relation acyclic and connected on its own,
//! so validation only has to check membership and ordering.
//!
//! Children are never stored. They are derived from the parent table and
//! visited greatest-first by walks, smallest-first by serialization.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Label;

/// Length of the shortest downward path from a vertex to a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(pub usize);

impl Rank {
    pub fn get(self) -> usize {
        self.0
    }

    pub fn is_leaf(self) -> bool {
        self.0 == 0
    }
}

impl PartialEq<usize> for Rank {
    fn eq(&self, other: &usize) -> bool {
        self.0 == *other
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Ranks of every vertex of one tree, computed in a single pass.
#[derive(Debug, Clone)]
pub struct Ranks {
    by_label: Vec<Option<usize>>,
}

impl Ranks {
    pub fn get(&self, v: Label) -> Option<Rank> {
        self.by_label.get(v).copied().flatten().map(Rank)
    }

    fn of(&self, v: Label) -> usize {
        self.by_label[v].expect("rank of a vertex of this tree")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncreasingTree {
    /// Sorted ascending; `labels[0]` is the root.
    labels: Vec<Label>,
    /// Indexed by label, `parent.len() == max label + 1`. `None` for the root
    /// and for integers that are not labels of this tree.
    parent: Vec<Option<Label>>,
}

impl IncreasingTree {
    /// The one-vertex tree.
    pub fn singleton(root: Label) -> Self {
        IncreasingTree {
            labels: vec![root],
            parent: vec![None; root + 1],
        }
    }

    /// Builds a tree on `{0, …, n-1}` from `parents[v - 1] = parent(v)`.
    pub fn from_parents(parents: &[Label]) -> Result<Self> {
        let edges = parents.iter().enumerate().map(|(i, &p)| (i + 1, p));
        Self::from_edges(0..=parents.len(), edges)
    }

    /// Builds a tree on an arbitrary label set from `(child, parent)` pairs.
    /// The smallest label is the root and must not appear as a child.
    pub fn from_edges<L, E>(labels: L, edges: E) -> Result<Self>
    where
        L: IntoIterator<Item = Label>,
        E: IntoIterator<Item = (Label, Label)>,
    {
        let mut labels: Vec<Label> = labels.into_iter().collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedLabel(w[0]));
        }
        let Some(&max) = labels.last() else {
            return Err(Error::MalformedTree("empty label set".into()));
        };
        let mut member = vec![false; max + 1];
        for &l in &labels {
            member[l] = true;
        }
        let mut parent = vec![None; max + 1];
        for (child, p) in edges {
            if child > max || !member[child] {
                return Err(Error::UnknownVertex(child));
            }
            if p > max || !member[p] {
                return Err(Error::UnknownVertex(p));
            }
            if parent[child].is_some() {
                return Err(Error::MalformedTree(format!("vertex {child} has two parents")));
            }
            if p >= child {
                return Err(Error::NotIncreasing { child, parent: p });
            }
            parent[child] = Some(p);
        }
        for &l in &labels[1..] {
            if parent[l].is_none() {
                return Err(Error::MalformedTree(format!("vertex {l} has no parent")));
            }
        }
        Ok(IncreasingTree { labels, parent })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn root(&self) -> Label {
        self.labels[0]
    }

    /// True when the label set is exactly `{0, …, n-1}`.
    pub fn is_standard(&self) -> bool {
        self.labels.len() == self.parent.len()
    }

    pub fn contains(&self, v: Label) -> bool {
        v < self.parent.len() && self.labels.binary_search(&v).is_ok()
    }

    pub fn parent(&self, v: Label) -> Option<Label> {
        self.parent.get(v).copied().flatten()
    }

    /// `parent(v)` for `v = 1, …, n-1` of a standard tree.
    pub fn parent_list(&self) -> Option<Vec<Label>> {
        self.is_standard()
            .then(|| self.labels[1..].iter().map(|&v| self.parent[v].unwrap()).collect())
    }

    /// Children of `v` in ascending order.
    pub fn children(&self, v: Label) -> Vec<Label> {
        self.labels
            .iter()
            .copied()
            .filter(|&c| self.parent[c] == Some(v))
            .collect()
    }

    pub fn child_count(&self, v: Label) -> usize {
        self.labels.iter().filter(|&&c| self.parent[c] == Some(v)).count()
    }

    /// Ascending child lists indexed by label.
    fn child_lists(&self) -> Vec<Vec<Label>> {
        let mut lists = vec![Vec::new(); self.parent.len()];
        for &v in &self.labels[1..] {
            lists[self.parent[v].unwrap()].push(v);
        }
        lists
    }

    fn check_vertex(&self, v: Label) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn ranks(&self) -> Ranks {
        // Children carry larger labels than their parents, so a descending
        // sweep sees every child before its parent.
        let mut min_child: Vec<Option<usize>> = vec![None; self.parent.len()];
        let mut by_label = vec![None; self.parent.len()];
        for &v in self.labels.iter().rev() {
            let r = min_child[v].map_or(0, |m| m + 1);
            by_label[v] = Some(r);
            if let Some(p) = self.parent[v] {
                min_child[p] = Some(min_child[p].map_or(r, |m: usize| m.min(r)));
            }
        }
        Ranks { by_label }
    }

    pub fn rank(&self, v: Label) -> Result<Rank> {
        self.check_vertex(v)?;
        Ok(Rank(self.ranks().of(v)))
    }

    /// Vertices without children, ascending.
    pub fn leaves(&self) -> Vec<Label> {
        let mut has_child = vec![false; self.parent.len()];
        for &v in &self.labels[1..] {
            has_child[self.parent[v].unwrap()] = true;
        }
        self.labels.iter().copied().filter(|&v| !has_child[v]).collect()
    }

    /// Depth search walk of the subtree rooted at `start`: always move to the
    /// greatest unvisited child, backtracking when none is left.
    pub fn walk(&self, start: Label) -> Result<Vec<Label>> {
        self.check_vertex(start)?;
        let lists = self.child_lists();
        let mut order = Vec::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            order.push(v);
            // ascending push, so the greatest child is popped first
            stack.extend_from_slice(&lists[v]);
        }
        Ok(order)
    }

    /// Labels on the path from the root down to `v`, inclusive.
    pub fn path_from_root(&self, v: Label) -> Result<Vec<Label>> {
        self.check_vertex(v)?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    /// Whether `ancestor` lies on the path from the root to `v` (`v` counts).
    pub fn is_ancestor(&self, ancestor: Label, v: Label) -> bool {
        let mut cur = Some(v);
        while let Some(c) = cur {
            if c == ancestor {
                return true;
            }
            if c < ancestor {
                return false;
            }
            cur = self.parent(c);
        }
        false
    }

    fn grow(&mut self, v: Label) {
        if v >= self.parent.len() {
            self.parent.resize(v + 1, None);
        }
        let at = self.labels.binary_search(&v).unwrap_err();
        self.labels.insert(at, v);
    }

    fn shrink(&mut self, v: Label) {
        let at = self.labels.binary_search(&v).unwrap();
        self.labels.remove(at);
        self.parent[v] = None;
        let len = self.labels.last().map_or(0, |&m| m + 1);
        self.parent.truncate(len);
    }

    /// Adds the new label `v` as a leaf under `parent`.
    pub fn insert_leaf(&mut self, v: Label, parent: Label) -> Result<()> {
        self.check_vertex(parent)?;
        if self.contains(v) {
            return Err(Error::RepeatedLabel(v));
        }
        if parent >= v {
            return Err(Error::NotIncreasing { child: v, parent });
        }
        self.grow(v);
        self.parent[v] = Some(parent);
        Ok(())
    }

    /// Adds the new label `v` above the current root.
    pub fn insert_root(&mut self, v: Label) -> Result<()> {
        let old = self.root();
        if self.contains(v) {
            return Err(Error::RepeatedLabel(v));
        }
        if v > old {
            return Err(Error::NotIncreasing { child: old, parent: v });
        }
        self.grow(v);
        self.parent[old] = Some(v);
        Ok(())
    }

    /// Moves the subtree rooted at `v` under `new_parent`.
    ///
    /// `new_parent < v` already rules out `new_parent` being inside the moved
    /// subtree, whose labels all exceed `v`.
    pub fn reparent(&mut self, v: Label, new_parent: Label) -> Result<()> {
        self.check_vertex(v)?;
        self.check_vertex(new_parent)?;
        if v == self.root() {
            return Err(Error::Contract(format!("cannot reparent the root {v}")));
        }
        if new_parent >= v {
            return Err(Error::NotIncreasing {
                child: v,
                parent: new_parent,
            });
        }
        self.parent[v] = Some(new_parent);
        Ok(())
    }

    pub fn remove_leaf(&mut self, v: Label) -> Result<()> {
        self.check_vertex(v)?;
        if self.child_count(v) != 0 {
            return Err(Error::Contract(format!("vertex {v} is not a leaf")));
        }
        if self.size() == 1 {
            return Err(Error::Contract("cannot remove the last vertex".into()));
        }
        self.shrink(v);
        Ok(())
    }

    /// Removes `v`, which must have exactly one child; that child takes its
    /// place (becoming the root if `v` was the root).
    pub fn contract(&mut self, v: Label) -> Result<()> {
        self.check_vertex(v)?;
        let kids = self.children(v);
        let [child] = kids[..] else {
            return Err(Error::Contract(format!(
                "vertex {v} has {} children, expected 1",
                kids.len()
            )));
        };
        self.parent[child] = self.parent[v];
        self.shrink(v);
        Ok(())
    }

    /// Relabels through an order-preserving map, which keeps the tree increasing.
    pub(crate) fn map_labels(&self, mut f: impl FnMut(Label) -> Result<Label>) -> Result<Self> {
        let mut labels = Vec::with_capacity(self.labels.len());
        let mut edges = Vec::with_capacity(self.labels.len());
        for &v in &self.labels {
            let nv = f(v)?;
            labels.push(nv);
            if let Some(p) = self.parent[v] {
                edges.push((nv, f(p)?));
            }
        }
        Self::from_edges(labels, edges)
    }
}

/// `size=<n>;parents=<p1,…>` for standard label sets, otherwise
/// `labels=<l1,…>;edges=<child:parent,…>`.
impl fmt::Display for IncreasingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(parents) = self.parent_list() {
            write!(f, "size={};parents=", self.size())?;
            write_joined(f, parents.iter(), ",")
        } else {
            f.write_str("labels=")?;
            write_joined(f, self.labels.iter(), ",")?;
            f.write_str(";edges=")?;
            let edges: Vec<String> = self.labels[1..]
                .iter()
                .map(|&v| format!("{v}:{}", self.parent[v].unwrap()))
                .collect();
            f.write_str(&edges.join(","))
        }
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>, sep: &str) -> fmt::Result {
    for (i, item) in items.enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Splits `key=value;key=value` text into fields, keeping the column at which
/// each value starts.
pub(crate) fn fields(text: &str) -> Result<Vec<Field<'_>>> {
    let mut out = Vec::new();
    let mut column = 1;
    for part in text.trim_end().split(';') {
        let Some((key, value)) = part.split_once('=') else {
            return Err(Error::Syntax {
                column,
                message: format!("expected key=value, found {part:?}"),
            });
        };
        out.push((key.trim(), value.trim(), column + key.len() + 1));
        column += part.len() + 1;
    }
    Ok(out)
}

pub(crate) fn parse_list(value: &str, column: usize) -> Result<Vec<Label>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut col = column;
    for item in value.split(',') {
        out.push(parse_label(item.trim(), col)?);
        col += item.len() + 1;
    }
    Ok(out)
}

pub(crate) fn parse_label(token: &str, column: usize) -> Result<Label> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax {
            column,
            message: format!("expected a nonnegative integer, found {token:?}"),
        });
    }
    token.parse().map_err(|_| Error::Syntax {
        column,
        message: format!("integer too large: {token}"),
    })
}

/// A `key=value` field with the column where its value starts.
pub(crate) type Field<'a> = (&'a str, &'a str, usize);

/// Parses the tree fields of a serialization, returning the tree and any
/// fields it did not consume.
pub(crate) fn parse_tree_fields<'a>(fields: &[Field<'a>]) -> Result<(IncreasingTree, Vec<Field<'a>>)> {
    let lookup = |name: &str| fields.iter().find(|(k, _, _)| *k == name);
    let rest: Vec<_>;
    let tree = if let Some(&(_, size, scol)) = lookup("size") {
        let (_, parents, pcol) = lookup("parents").copied().ok_or_else(|| Error::Syntax {
            column: 1,
            message: "missing parents field".into(),
        })?;
        let n = parse_label(size, scol)?;
        let parents = parse_list(parents, pcol)?;
        if n == 0 {
            return Err(Error::MalformedTree("size must be positive".into()));
        }
        if parents.len() + 1 != n {
            return Err(Error::SizeMismatch {
                expected: n - 1,
                found: parents.len(),
            });
        }
        rest = fields
            .iter()
            .filter(|(k, _, _)| *k != "size" && *k != "parents")
            .copied()
            .collect();
        IncreasingTree::from_parents(&parents)?
    } else if let Some(&(_, labels, lcol)) = lookup("labels") {
        let (_, edges, ecol) = lookup("edges").copied().ok_or_else(|| Error::Syntax {
            column: 1,
            message: "missing edges field".into(),
        })?;
        let labels = parse_list(labels, lcol)?;
        let mut pairs = Vec::new();
        if !edges.is_empty() {
            let mut col = ecol;
            for item in edges.split(',') {
                let Some((c, p)) = item.split_once(':') else {
                    return Err(Error::Syntax {
                        column: col,
                        message: format!("expected child:parent, found {item:?}"),
                    });
                };
                pairs.push((parse_label(c.trim(), col)?, parse_label(p.trim(), col + c.len() + 1)?));
                col += item.len() + 1;
            }
        }
        rest = fields
            .iter()
            .filter(|(k, _, _)| *k != "labels" && *k != "edges")
            .copied()
            .collect();
        IncreasingTree::from_edges(labels, pairs)?
    } else {
        return Err(Error::Syntax {
            column: 1,
            message: "expected a size= or labels= field".into(),
        });
    };
    Ok((tree, rest))
}

impl FromStr for IncreasingTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = fields(s)?;
        let (tree, rest) = parse_tree_fields(&fields)?;
        if let Some((key, _, col)) = rest.first() {
            return Err(Error::Syntax {
                column: col - key.len() - 1,
                message: format!("unexpected field {key:?}"),
            });
        }
        Ok(tree)
    }
}
