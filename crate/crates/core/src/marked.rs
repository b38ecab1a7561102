use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::{fields, parse_label, parse_tree_fields, IncreasingTree};
use crate::Label;

/// An increasing tree with one distinguished vertex of rank exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedTree {
    tree: IncreasingTree,
    mark: Label,
}

impl MarkedTree {
    pub fn new(tree: IncreasingTree, mark: Label) -> Result<Self> {
        let rank = tree.rank(mark)?;
        if rank != 1 {
            return Err(Error::MarkNotRankOne { mark, rank: rank.get() });
        }
        Ok(MarkedTree { tree, mark })
    }

    pub fn tree(&self) -> &IncreasingTree {
        &self.tree
    }

    pub fn into_tree(self) -> IncreasingTree {
        self.tree
    }

    pub fn mark(&self) -> Label {
        self.mark
    }

    pub fn size(&self) -> usize {
        self.tree.size()
    }

    /// Every rank-1 vertex of `tree`, each as its own marked tree.
    pub fn all_markings(tree: &IncreasingTree) -> impl Iterator<Item = MarkedTree> + '_ {
        let ranks = tree.ranks();
        tree.labels()
            .iter()
            .copied()
            .filter(move |&v| ranks.get(v).is_some_and(|r| r == 1))
            .map(move |mark| MarkedTree {
                tree: tree.clone(),
                mark,
            })
    }
}

impl fmt::Display for MarkedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};mark={}", self.tree, self.mark)
    }
}

impl FromStr for MarkedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = fields(s)?;
        let (tree, rest) = parse_tree_fields(&fields)?;
        let mut mark = None;
        for (key, value, col) in rest {
            if key == "mark" && mark.is_none() {
                mark = Some(parse_label(value, col)?);
            } else {
                return Err(Error::Syntax {
                    column: col - key.len() - 1,
                    message: format!("unexpected field {key:?}"),
                });
            }
        }
        let mark = mark.ok_or_else(|| Error::Syntax {
            column: s.len() + 1,
            message: "missing mark field".into(),
        })?;
        MarkedTree::new(tree, mark)
    }
}
