//! Permutations of finite label sets in disjoint cycle notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::parse_label;
use crate::Label;

/// A permutation stored as disjoint cycles, always in canonical form: each
/// cycle starts at its smallest element and cycles are ordered by that
/// element. Two decompositions are equal iff they are the same permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<Label>>,
}

impl CycleDecomposition {
    /// Builds a permutation from cycles. Every label may appear only once;
    /// 1-cycles are kept and count as fixed points.
    pub fn new(cycles: Vec<Vec<Label>>) -> Result<Self> {
        let mut seen: Vec<Label> = cycles.iter().flatten().copied().collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedLabel(w[0]));
        }
        if cycles.iter().any(Vec::is_empty) {
            return Err(Error::Contract("empty cycle".into()));
        }
        Ok(Self::canonical(cycles))
    }

    fn canonical(mut cycles: Vec<Vec<Label>>) -> Self {
        cycles.retain(|c| !c.is_empty());
        for c in &mut cycles {
            let at = c.iter().enumerate().min_by_key(|&(_, &x)| x).unwrap().0;
            c.rotate_left(at);
        }
        cycles.sort_unstable_by_key(|c| c[0]);
        CycleDecomposition { cycles }
    }

    /// Reads a permutation of `{0, …, n-1}` given as `images[i] = p(i)`.
    pub fn from_images(images: &[Label]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n {
                return Err(Error::LabelOutOfRange(x));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedLabel(x));
            }
        }
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x);
                x = images[x];
            }
            cycles.push(cycle);
        }
        // already canonical: each cycle starts at its first unvisited label
        Ok(CycleDecomposition { cycles })
    }

    pub fn cycles(&self) -> &[Vec<Label>] {
        &self.cycles
    }

    pub fn size(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Sorted labels the permutation acts on.
    pub fn ground_set(&self) -> Vec<Label> {
        let mut g: Vec<Label> = self.cycles.iter().flatten().copied().collect();
        g.sort_unstable();
        g
    }

    /// Ground set is exactly `{0, …, n-1}`.
    pub fn is_standard(&self) -> bool {
        self.ground_set().iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Checks that the ground set is `{0, …, n-1}`, naming the first gap.
    pub fn expect_standard(&self, n: usize) -> Result<()> {
        let g = self.ground_set();
        if let Some(missing) = (0..n).find(|&i| g.get(i) != Some(&i)) {
            return Err(Error::MissingLabel(missing));
        }
        if let Some(&x) = g.iter().find(|&&x| x >= n) {
            return Err(Error::LabelOutOfRange(x));
        }
        Ok(())
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = Label> + '_ {
        self.cycles.iter().filter(|c| c.len() == 1).map(|c| c[0])
    }

    pub fn is_derangement(&self) -> bool {
        self.cycles.iter().all(|c| c.len() >= 2)
    }

    /// Fails with the smallest fixed point, if any.
    pub fn expect_derangement(&self) -> Result<()> {
        match self.fixed_points().next() {
            Some(x) => Err(Error::FixedPoint(x)),
            None => Ok(()),
        }
    }

    fn locate(&self, x: Label) -> Option<(usize, usize)> {
        self.cycles
            .iter()
            .enumerate()
            .find_map(|(ci, c)| c.iter().position(|&y| y == x).map(|pos| (ci, pos)))
    }

    pub fn cycle_of(&self, x: Label) -> Option<&[Label]> {
        self.locate(x).map(|(ci, _)| self.cycles[ci].as_slice())
    }

    /// `p(x)`.
    pub fn image(&self, x: Label) -> Option<Label> {
        let (ci, pos) = self.locate(x)?;
        let c = &self.cycles[ci];
        Some(c[(pos + 1) % c.len()])
    }

    /// `p⁻¹(x)`, the entry preceding `x` in its cycle.
    pub fn preimage(&self, x: Label) -> Option<Label> {
        let (ci, pos) = self.locate(x)?;
        let c = &self.cycles[ci];
        Some(c[(pos + c.len() - 1) % c.len()])
    }

    /// `images[i] = p(i)` for a standard ground set.
    pub fn to_images(&self) -> Option<Vec<Label>> {
        if !self.is_standard() {
            return None;
        }
        let mut images = vec![0; self.size()];
        for c in &self.cycles {
            for (i, &x) in c.iter().enumerate() {
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Some(images)
    }

    /// Deletes `x` from its cycle, closing the gap. A 1-cycle disappears.
    pub fn without(&self, x: Label) -> Result<Self> {
        let (ci, pos) = self.locate(x).ok_or(Error::UnknownVertex(x))?;
        let mut cycles = self.cycles.clone();
        cycles[ci].remove(pos);
        Ok(Self::canonical(cycles))
    }

    /// Splices the new label `x` in as the successor of `anchor`; the old
    /// successor of `anchor` becomes the successor of `x`.
    pub fn insert_after(&self, anchor: Label, x: Label) -> Result<Self> {
        if self.locate(x).is_some() {
            return Err(Error::RepeatedLabel(x));
        }
        let (ci, pos) = self.locate(anchor).ok_or(Error::UnknownVertex(anchor))?;
        let mut cycles = self.cycles.clone();
        cycles[ci].insert(pos + 1, x);
        Ok(Self::canonical(cycles))
    }

    /// Removes the whole cycle containing `x`, returning it and the rest.
    pub fn split_cycle(&self, x: Label) -> Result<(Vec<Label>, Self)> {
        let (ci, _) = self.locate(x).ok_or(Error::UnknownVertex(x))?;
        let mut cycles = self.cycles.clone();
        let cycle = cycles.remove(ci);
        Ok((cycle, CycleDecomposition { cycles }))
    }

    /// Adds a cycle on labels not yet present.
    pub fn with_cycle(&self, cycle: Vec<Label>) -> Result<Self> {
        let mut cycles = self.cycles.clone();
        cycles.push(cycle);
        Self::new(cycles)
    }

    pub(crate) fn map_labels(&self, mut f: impl FnMut(Label) -> Result<Label>) -> Result<Self> {
        let cycles = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(cycles)
    }
}

/// `(a b c)(d e)`, single spaces inside cycles.
impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation. Labels inside a cycle are separated by whitespace.
/// A cycle written without any whitespace, such as `(053)`, is read as one
/// label per digit; this compact form only works when every label is below 10.
impl FromStr for CycleDecomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut cycles = Vec::new();
        let mut i = 0;
        let syntax = |i: usize, message: String| Error::Syntax { column: i + 1, message };
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i == bytes.len() {
                break;
            }
            if bytes[i] != b'(' {
                return Err(syntax(
                    i,
                    format!("expected '(', found {:?}", s[i..].chars().next().unwrap()),
                ));
            }
            let open = i;
            i += 1;
            let mut tokens: Vec<(usize, usize)> = Vec::new();
            let mut spaced = false;
            loop {
                match bytes.get(i) {
                    None => return Err(syntax(open, "unclosed '('".into())),
                    Some(b')') => {
                        i += 1;
                        break;
                    }
                    Some(b) if b.is_ascii_whitespace() => {
                        spaced = true;
                        i += 1;
                    }
                    Some(b) if b.is_ascii_digit() => {
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        tokens.push((start, i));
                    }
                    Some(_) => {
                        return Err(syntax(
                            i,
                            format!("unexpected character {:?}", s[i..].chars().next().unwrap()),
                        ))
                    }
                }
            }
            let cycle = match tokens[..] {
                [] => return Err(syntax(open, "empty cycle".into())),
                [(start, end)] if !spaced && end - start > 1 => {
                    (start..end).map(|k| (bytes[k] - b'0') as Label).collect()
                }
                _ => tokens
                    .iter()
                    .map(|&(start, end)| parse_label(&s[start..end], start + 1))
                    .collect::<Result<Vec<_>>>()?,
            };
            cycles.push(cycle);
        }
        Self::new(cycles)
    }
}
