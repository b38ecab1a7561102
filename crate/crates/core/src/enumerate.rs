//! Exhaustive generators and the counting checks built on them.
//!
//! Generators are plain iterators in a fixed order, so two runs agree and a
//! fresh call restarts the stream. Nothing is materialized up front.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::iter::{ParallelBridge, ParallelIterator};
use serde::{Deserialize, Serialize};

use crate::bijection::{forward_with_case, inverse, CaseTag};
use crate::cycles::CycleDecomposition;
use crate::error::{Error, Result};
use crate::marked::MarkedTree;
use crate::tree::IncreasingTree;
use crate::Label;

/// Default largest size accepted by [`verify_bijection`].
pub const DEFAULT_VERIFY_LIMIT: usize = 8;
/// Largest size [`verify_bijection`] accepts even when asked to go further.
pub const MAX_VERIFY_LIMIT: usize = 9;

/// All increasing trees on `{0, …, n-1}`, each vertex `v` choosing a parent
/// in `0..v`. Choices are stepped like an odometer with the last vertex
/// moving fastest.
#[derive(Debug, Clone)]
pub struct IncreasingTrees {
    parents: Vec<Label>,
    done: bool,
}

pub fn increasing_trees(n: usize) -> Result<IncreasingTrees> {
    if n == 0 {
        return Err(Error::Contract("tree size must be positive".into()));
    }
    Ok(IncreasingTrees {
        parents: vec![0; n - 1],
        done: false,
    })
}

impl Iterator for IncreasingTrees {
    type Item = IncreasingTree;

    fn next(&mut self) -> Option<IncreasingTree> {
        if self.done {
            return None;
        }
        let tree = IncreasingTree::from_parents(&self.parents).expect("odometer keeps parents below children");
        // parents[i] is the parent of vertex i + 1, so it ranges over 0..=i
        self.done = true;
        for i in (0..self.parents.len()).rev() {
            if self.parents[i] < i {
                self.parents[i] += 1;
                self.done = false;
                break;
            }
            self.parents[i] = 0;
        }
        Some(tree)
    }
}

/// All derangements of `{0, …, n-1}` in lexicographic order of their
/// one-line form. Empty for `n <= 1`.
#[derive(Debug, Clone)]
pub struct Derangements {
    images: Vec<Label>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

pub fn derangements(n: usize) -> Derangements {
    Derangements {
        images: vec![0; n],
        used: vec![false; n],
        started: false,
        done: n < 2,
    }
}

impl Derangements {
    /// Whether the positions after `pos` can still be filled without a fixed
    /// point, given that `pos` has just taken a value. Only a single leftover
    /// position whose own label is the single leftover value fails.
    fn completable(&self, pos: usize) -> bool {
        let n = self.images.len();
        if pos + 2 != n {
            return true;
        }
        self.used[n - 1]
    }

    /// Smallest admissible value at `pos` strictly above `floor`.
    fn pick(&mut self, pos: usize, floor: Option<Label>) -> bool {
        let start = floor.map_or(0, |f| f + 1);
        for c in start..self.images.len() {
            if c == pos || self.used[c] {
                continue;
            }
            self.used[c] = true;
            if self.completable(pos) {
                self.images[pos] = c;
                return true;
            }
            self.used[c] = false;
        }
        false
    }

    fn fill_from(&mut self, pos: usize) {
        for p in pos..self.images.len() {
            let ok = self.pick(p, None);
            debug_assert!(ok, "completion exists");
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.images.len();
        for i in (0..n).rev() {
            let old = self.images[i];
            self.used[old] = false;
            if self.pick(i, Some(old)) {
                self.fill_from(i + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for Derangements {
    type Item = CycleDecomposition;

    fn next(&mut self) -> Option<CycleDecomposition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(CycleDecomposition::from_images(&self.images).expect("images form a permutation"))
    }
}

/// Every increasing tree of size `n` with every choice of rank-1 vertex.
pub fn marked_trees(n: usize) -> Result<impl Iterator<Item = MarkedTree>> {
    Ok(increasing_trees(n)?.flat_map(|t| MarkedTree::all_markings(&t).collect::<Vec<_>>()))
}

/// Number of rank-`k` vertices summed over all increasing trees of size `n`.
pub fn count_rank_k(n: usize, k: usize) -> Result<u64> {
    Ok(rank_profile(n)?.get(k).copied().unwrap_or(0))
}

/// `profile[k]` is the number of rank-`k` vertices over all trees of size `n`.
pub fn rank_profile(n: usize) -> Result<Vec<u64>> {
    let mut profile = Vec::new();
    for t in increasing_trees(n)? {
        let ranks = t.ranks();
        for &v in t.labels() {
            let r = ranks.get(v).unwrap().get();
            if profile.len() <= r {
                profile.resize(r + 1, 0);
            }
            profile[r] += 1;
        }
    }
    Ok(profile)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCountRow {
    pub n: usize,
    pub k: usize,
    pub count: u64,
}

pub fn rank_count_table(max_n: usize, k: usize) -> Result<Vec<RankCountRow>> {
    (1..=max_n)
        .map(|n| {
            Ok(RankCountRow {
                n,
                k,
                count: count_rank_k(n, k)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// `forward` returned an error.
    ForwardError,
    /// `forward` returned a tree of the wrong size or label set.
    InvalidImage,
    /// Two derangements share an image.
    DuplicateImage,
    /// `inverse(forward(p)) != p`.
    InverseMismatch,
    /// A marked tree that no derangement maps to.
    MissingImage,
    /// `inverse` returned an error.
    InverseError,
    /// `forward(inverse(t)) != t`.
    ForwardMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RoundTripFailure {
    pub kind: FailureKind,
    /// The derangement or marked tree involved, in its text form.
    pub input: String,
    pub detail: String,
}

/// Outcome of checking the bijection exhaustively at one size.
///
/// JSON field names: `n`, `derangement_count`, `marked_tree_count`,
/// `image_count`, `round_trip_failures` (objects with `kind`, `input`,
/// `detail`), `case_histogram` (case name to count), `elapsed_seconds`,
/// `passed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub derangement_count: u64,
    pub marked_tree_count: u64,
    /// Distinct trees produced by the forward map.
    pub image_count: u64,
    pub round_trip_failures: Vec<RoundTripFailure>,
    pub case_histogram: BTreeMap<CaseTag, u64>,
    #[serde(rename = "elapsed_seconds", with = "seconds")]
    pub elapsed: Duration,
    pub passed: bool,
}

mod seconds {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        f64::deserialize(d).map(Duration::from_secs_f64)
    }
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// One line: `n=5 derangements=44 marked_trees=44 images=44 failures=0
/// cases=C1a:9,… elapsed=0.001s status=ok`.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cases: Vec<String> = self.case_histogram.iter().map(|(c, k)| format!("{c}:{k}")).collect();
        write!(
            f,
            "n={} derangements={} marked_trees={} images={} failures={} cases={} elapsed={:.3}s status={}",
            self.n,
            self.derangement_count,
            self.marked_tree_count,
            self.image_count,
            self.round_trip_failures.len(),
            cases.join(","),
            self.elapsed.as_secs_f64(),
            if self.passed { "ok" } else { "FAILED" },
        )
    }
}

/// Per-worker accumulator; merging is associative so the result does not
/// depend on how the stream was split.
#[derive(Default)]
struct Partial {
    count: u64,
    images: HashSet<String>,
    duplicates: Vec<String>,
    failures: Vec<RoundTripFailure>,
    histogram: BTreeMap<CaseTag, u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.count += other.count;
        for img in other.images {
            if !self.images.insert(img.clone()) {
                self.duplicates.push(img);
            }
        }
        self.duplicates.extend(other.duplicates);
        self.failures.extend(other.failures);
        for (case, k) in other.histogram {
            *self.histogram.entry(case).or_default() += k;
        }
        self
    }

    fn check_derangement(mut self, n: usize, p: CycleDecomposition) -> Partial {
        self.count += 1;
        let fail = |kind, detail: String| RoundTripFailure {
            kind,
            input: p.to_string(),
            detail,
        };
        match forward_with_case(&p) {
            Err(e) => self.failures.push(fail(FailureKind::ForwardError, e.to_string())),
            Ok((mt, case)) => {
                *self.histogram.entry(case).or_default() += 1;
                if mt.size() != n || !mt.tree().is_standard() {
                    self.failures.push(fail(FailureKind::InvalidImage, mt.to_string()));
                }
                match inverse(&mt) {
                    Ok(back) if back == p => {}
                    Ok(back) => self.failures.push(fail(FailureKind::InverseMismatch, back.to_string())),
                    Err(e) => self.failures.push(fail(FailureKind::InverseError, e.to_string())),
                }
                let img = mt.to_string();
                if !self.images.insert(img.clone()) {
                    self.duplicates.push(img);
                }
            }
        }
        self
    }
}

/// Runs the forward map over every derangement of size `n` and the inverse
/// over every marked tree of size `n`, checking both round trips and that the
/// image is exactly the set of marked trees.
///
/// Refuses sizes above `limit`, and any `limit` above [`MAX_VERIFY_LIMIT`].
pub fn verify_bijection(n: usize, limit: usize) -> Result<VerificationReport> {
    if limit > MAX_VERIFY_LIMIT {
        return Err(Error::LimitExceeded {
            n: limit,
            limit: MAX_VERIFY_LIMIT,
        });
    }
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }
    if n < 2 {
        return Err(Error::Contract("verification starts at size 2".into()));
    }
    let started = Instant::now();

    let partial = derangements(n)
        .par_bridge()
        .fold(Partial::default, |acc, p| acc.check_derangement(n, p))
        .reduce(Partial::default, Partial::merge);

    let mut failures = partial.failures;
    for img in partial.duplicates {
        failures.push(RoundTripFailure {
            kind: FailureKind::DuplicateImage,
            input: img,
            detail: String::new(),
        });
    }

    let images = &partial.images;
    let (marked_count, tree_failures) = marked_trees(n)?
        .par_bridge()
        .fold(
            || (0u64, Vec::new()),
            |(count, mut fails), mt| {
                let fail = |kind, detail: String| RoundTripFailure {
                    kind,
                    input: mt.to_string(),
                    detail,
                };
                if !images.contains(&mt.to_string()) {
                    fails.push(fail(FailureKind::MissingImage, String::new()));
                }
                match inverse(&mt).and_then(|p| forward_with_case(&p)) {
                    Ok((back, _)) if back == mt => {}
                    Ok((back, _)) => fails.push(fail(FailureKind::ForwardMismatch, back.to_string())),
                    Err(e) => fails.push(fail(FailureKind::InverseError, e.to_string())),
                }
                (count + 1, fails)
            },
        )
        .reduce(
            || (0, Vec::new()),
            |(a, mut fa), (b, fb)| {
                fa.extend(fb);
                (a + b, fa)
            },
        );
    failures.extend(tree_failures);
    failures.sort();
    failures.dedup();

    let passed = failures.is_empty() && partial.count == marked_count && images.len() as u64 == marked_count;
    Ok(VerificationReport {
        n,
        derangement_count: partial.count,
        marked_tree_count: marked_count,
        image_count: images.len() as u64,
        round_trip_failures: failures,
        case_histogram: partial.histogram,
        elapsed: started.elapsed(),
        passed,
    })
}

/// One row of the recurrence table. Residuals are `None` below `n = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceRow {
    pub n: usize,
    /// Rank-1 vertices over all trees of size `n`.
    pub a_n: u64,
    /// `A_n - (n-1)(A_{n-1} + A_{n-2})`, the derangement recurrence.
    pub classical_residual: Option<i64>,
    /// `A_n - n A_{n-1} - n A_{n-2}`.
    pub alternate_residual: Option<i64>,
}

/// Counts rank-1 vertices for every size up to `max_n` and reports how far
/// they are from two candidate recurrences.
pub fn recurrence_check(max_n: usize) -> Result<Vec<RecurrenceRow>> {
    if max_n < 3 {
        return Err(Error::Contract("recurrence check needs max_n >= 3".into()));
    }
    let a: Vec<u64> = (1..=max_n).map(|n| count_rank_k(n, 1)).collect::<Result<_>>()?;
    Ok((1..=max_n)
        .map(|n| {
            let a_n = a[n - 1];
            let (classical_residual, alternate_residual) = if n >= 3 {
                let (a1, a2) = (a[n - 2] as i64, a[n - 3] as i64);
                let n_i = n as i64;
                (
                    Some(a_n as i64 - (n_i - 1) * (a1 + a2)),
                    Some(a_n as i64 - n_i * a1 - n_i * a2),
                )
            } else {
                (None, None)
            };
            RecurrenceRow {
                n,
                a_n,
                classical_residual,
                alternate_residual,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub n: usize,
    pub histogram: BTreeMap<CaseTag, u64>,
    pub total: u64,
    /// Derangements whose tree has `n-1` as a child of the mark
    /// (cases C1a, C1cII, C2a, C2b together).
    pub top_under_mark: u64,
}

/// How many derangements of size `n` fall in each case.
pub fn case_counts(n: usize) -> Result<CaseCounts> {
    if n < 4 {
        return Err(Error::Contract("case counts start at size 4".into()));
    }
    let mut histogram: BTreeMap<CaseTag, u64> = CaseTag::RECURSIVE.iter().map(|&c| (c, 0)).collect();
    for p in derangements(n) {
        let (_, case) = forward_with_case(&p)?;
        *histogram.entry(case).or_default() += 1;
    }
    let total = histogram.values().sum();
    let top_under_mark = histogram
        .iter()
        .filter(|(c, _)| c.top_under_mark())
        .map(|(_, k)| k)
        .sum();
    Ok(CaseCounts {
        n,
        histogram,
        total,
        top_under_mark,
    })
}
