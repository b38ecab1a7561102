//! One-line permutation words and their correspondence with increasing trees.
//!
//! Reading the depth search walk of a tree of size `n` from the root, and
//! dropping the root, gives a permutation of `{1, …, n-1}`. Every such word
//! arises from exactly one tree.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::{parse_label, IncreasingTree};
use crate::Label;

/// A permutation of `{1, …, len}` in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermWord(Vec<Label>);

impl PermWord {
    pub fn new(word: Vec<Label>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n {
                return Err(Error::LabelOutOfRange(x));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedLabel(x));
            }
        }
        Ok(PermWord(word))
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of positions `i` with `w[i] > w[i+1]`.
    pub fn descents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }
}

impl fmt::Display for PermWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Whitespace- or comma-separated labels; a single run of digits such as
/// `4752613` is read one label per digit.
impl FromStr for PermWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in s.char_indices().chain([(s.len(), ' ')]) {
            if c.is_whitespace() || c == ',' {
                if let Some(st) = start.take() {
                    tokens.push((st, i));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        let word = match tokens[..] {
            [(st, end)] if end - st > 1 && s[st..end].bytes().all(|b| b.is_ascii_digit()) => {
                s[st..end].bytes().map(|b| (b - b'0') as Label).collect()
            }
            _ => tokens
                .iter()
                .map(|&(st, end)| parse_label(&s[st..end], st + 1))
                .collect::<Result<Vec<_>>>()?,
        };
        PermWord::new(word)
    }
}

/// The walk from the root with the root omitted.
pub fn tree_to_perm(tree: &IncreasingTree) -> Result<PermWord> {
    if !tree.is_standard() {
        return Err(Error::Contract("tree labels must be 0..n".into()));
    }
    let mut walk = tree.walk(0)?;
    walk.remove(0);
    Ok(PermWord(walk))
}

/// Rebuilds the unique tree whose walk reads `word`.
///
/// The walk keeps the current root path on a stack. The next label is a child
/// of the deepest path vertex smaller than it: anything larger on the path was
/// a greater sibling (or its descendant) and has been finished already.
pub fn perm_to_tree(word: &PermWord) -> IncreasingTree {
    let mut parents = vec![0; word.len()];
    let mut path: Vec<Label> = vec![0];
    for &x in word.as_slice() {
        while *path.last().unwrap() > x {
            path.pop();
        }
        parents[x - 1] = *path.last().unwrap();
        path.push(x);
    }
    IncreasingTree::from_parents(&parents).expect("parents are smaller by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_word() {
        let t = IncreasingTree::from_parents(&[0, 0, 1, 0, 4, 2, 4]).unwrap();
        let w = tree_to_perm(&t).unwrap();
        assert_eq!(w.to_string(), "4 7 5 2 6 1 3");
        assert_eq!(perm_to_tree(&"4752613".parse().unwrap()), t);
    }

    #[test]
    fn small_words() {
        let single = IncreasingTree::singleton(0);
        assert!(tree_to_perm(&single).unwrap().is_empty());
        assert_eq!(perm_to_tree(&PermWord::new(vec![]).unwrap()), single);

        let star = IncreasingTree::from_parents(&[0, 0]).unwrap();
        assert_eq!(tree_to_perm(&star).unwrap().as_slice(), &[2, 1]);
        assert_eq!(perm_to_tree(&"2 1".parse().unwrap()), star);
    }

    #[test]
    fn word_validation() {
        assert_eq!(PermWord::new(vec![1, 3]), Err(Error::LabelOutOfRange(3)));
        assert_eq!(PermWord::new(vec![0, 1]), Err(Error::LabelOutOfRange(0)));
        assert_eq!(PermWord::new(vec![2, 2]), Err(Error::RepeatedLabel(2)));
        assert_eq!("3,1,2".parse::<PermWord>().unwrap().as_slice(), &[3, 1, 2]);
        assert!(matches!(
            "1 x".parse::<PermWord>(),
            Err(Error::Syntax { column: 3, .. })
        ));
        assert_eq!("4 7 5 2 6 1 3".parse::<PermWord>().unwrap().descents(), 3);
    }

    #[test]
    fn generalized_tree_has_no_word() {
        let t = IncreasingTree::from_edges([1, 2], [(2, 1)]).unwrap();
        assert!(tree_to_perm(&t).is_err());
    }
}
