//! Symbolic calculus for trees on ω, broom sets and their ranks, with
//! ordinal arithmetic below ε₀ and calculators for descriptive classes.

pub mod broom;
pub mod complexity;
pub mod dot;
pub mod error;
pub mod family;
pub mod gen;
pub mod ordinal;
pub mod rank;
pub mod seq;
pub mod sexp;
pub mod suite;
pub mod talpha;
pub mod term;
pub mod tree;

pub use broom::{canonical_btilde, class_of, BroomTerm, ClassKind, ClassTag, SuffixRule};
pub use error::{Error, Result};
pub use ordinal::{pi, pi_inverse, Ordinal, Parity};
pub use rank::RankValue;
pub use seq::{FinSeq, InfSeq};
pub use term::Term;
pub use tree::{AnnotatedTree, TreeTerm};
