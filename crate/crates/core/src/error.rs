use thiserror::Error;

use crate::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex: {0}")]
    UnknownVertex(Label),

    #[error("not increasing: vertex {child} has parent {parent}")]
    NotIncreasing { child: Label, parent: Label },

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("repeated label: {0}")]
    RepeatedLabel(Label),

    #[error("missing label: {0}")]
    MissingLabel(Label),

    #[error("label out of range: {0}")]
    LabelOutOfRange(Label),

    #[error("fixed point: {0}")]
    FixedPoint(Label),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("mark not rank 1: vertex {mark} has rank {rank}")]
    MarkNotRankOne { mark: Label, rank: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("size {n} exceeds the verification limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    /// An invariant the construction relies on did not hold.
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}
