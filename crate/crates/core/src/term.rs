use std::fmt;

use crate::broom::BroomTerm;
use crate::tree::TreeTerm;

/// Either kind of symbolic term read from a file.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Broom(BroomTerm),
    Tree(TreeTerm),
}

impl Term {
    pub fn to_tree(&self) -> TreeTerm {
        match self {
            Term::Broom(b) => b.to_tree(),
            Term::Tree(t) => t.clone(),
        }
    }

    pub fn as_broom(&self) -> Option<&BroomTerm> {
        match self {
            Term::Broom(b) => Some(b),
            Term::Tree(_) => None,
        }
    }
}

impl From<BroomTerm> for Term {
    fn from(b: BroomTerm) -> Self {
        Term::Broom(b)
    }
}

impl From<TreeTerm> for Term {
    fn from(t: TreeTerm) -> Self {
        Term::Tree(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Broom(b) => write!(f, "{b}"),
            Term::Tree(t) => write!(f, "{t}"),
        }
    }
}
