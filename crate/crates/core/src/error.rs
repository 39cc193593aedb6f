use thiserror::Error;

use crate::seq::FinSeq;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty range: pi is undefined for alpha = 0")]
    EmptyRange,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: cannot restrict a sequence of length {len} to {requested}")]
    Range { len: usize, requested: usize },
    #[error("invalid ordinal '{input}' at offset {offset}: {msg}")]
    OrdinalSyntax {
        input: String,
        offset: usize,
        msg: String,
    },
    #[error("syntax error at {line}:{column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("unknown fork rule '{0}'")]
    UnknownForkRule(String),
    #[error("duplicate fork label {0}")]
    DuplicateFork(u64),
    #[error("unclassifiable term: {0}")]
    Unclassifiable(String),
    #[error("widening defined for finite rank only (class level {0})")]
    FiniteRankOnly(String),
    #[error("empty list")]
    EmptyList,
    #[error("coverage error: table has no image for node {node}")]
    Coverage { node: FinSeq },
    #[error("coverage error: tested truncation ({breadth}, {depth}) exceeds declared bounds ({bound_breadth}, {bound_depth})")]
    Bounds {
        breadth: usize,
        depth: usize,
        bound_breadth: usize,
        bound_depth: usize,
    },
    #[error("not well-founded at tested depth: branch reaches {0} without infinite branching")]
    NotWellFounded(FinSeq),
    #[error("{0} is already a Borel class")]
    AlreadyBorel(String),
    #[error("inconsistent derivation: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
