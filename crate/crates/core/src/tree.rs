//! Trees on ω: explicit finite trees, symbolic tree terms with explicit
//! infinite branching, and annotated finite truncations.

use std::collections::BTreeSet;

use crate::broom;
use crate::error::{Error, Result};
use crate::family::{Bristle, CanonicalTail, OmegaFamily, TailRule};
use crate::rank;
use crate::seq::FinSeq;

/// The smallest tree containing `set`.
pub fn cl_tr<'a, I: IntoIterator<Item = &'a FinSeq>>(set: I) -> BTreeSet<FinSeq> {
    let mut out = BTreeSet::new();
    for s in set {
        if out.contains(s) {
            continue;
        }
        out.extend(s.prefixes());
    }
    out
}

/// A finite tree whose nodes may carry the infinite-branching marker.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AnnotatedTree {
    nodes: BTreeSet<FinSeq>,
    omega: BTreeSet<FinSeq>,
    /// Length bound of the truncation this tree was cut from.
    pub depth: Option<usize>,
}

impl AnnotatedTree {
    pub fn new() -> Self {
        AnnotatedTree::default()
    }

    /// Closes `nodes` under prefixes; markers outside the tree are dropped.
    pub fn from_parts<I, J>(nodes: I, omega: J, depth: Option<usize>) -> Self
    where
        I: IntoIterator<Item = FinSeq>,
        J: IntoIterator<Item = FinSeq>,
    {
        let raw: Vec<FinSeq> = nodes.into_iter().collect();
        let nodes = cl_tr(&raw);
        let omega = omega.into_iter().filter(|s| nodes.contains(s)).collect();
        AnnotatedTree {
            nodes,
            omega,
            depth,
        }
    }

    pub fn nodes(&self) -> &BTreeSet<FinSeq> {
        &self.nodes
    }

    pub fn omega(&self) -> &BTreeSet<FinSeq> {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, s: &FinSeq) -> bool {
        self.nodes.contains(s)
    }

    pub fn is_marked(&self, s: &FinSeq) -> bool {
        self.omega.contains(s)
    }

    /// Inserts `s` together with its prefixes.
    pub fn insert(&mut self, s: &FinSeq) {
        if !self.nodes.contains(s) {
            self.nodes.extend(s.prefixes());
        }
    }

    pub fn mark(&mut self, s: &FinSeq) {
        self.insert(s);
        self.omega.insert(s.clone());
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.nodes
            .iter()
            .all(|s| s.parent().is_none_or(|p| self.nodes.contains(&p)))
    }

    /// Immediate successors of `s`, in increasing order of the new entry.
    pub fn children(&self, s: &FinSeq) -> Vec<FinSeq> {
        let lo = s.child(0);
        self.nodes
            .range(lo..)
            .take_while(|t| t.extends(s))
            .filter(|t| t.len() == s.len() + 1)
            .cloned()
            .collect()
    }

    /// Nodes of length exactly `n`.
    pub fn level(&self, n: usize) -> impl Iterator<Item = &FinSeq> {
        self.nodes.iter().filter(move |s| s.len() == n)
    }

    pub fn max_len(&self) -> Option<usize> {
        self.nodes.iter().map(FinSeq::len).max()
    }

    /// Nodes of length at most `depth`.
    pub fn restrict_depth(&self, depth: usize) -> AnnotatedTree {
        AnnotatedTree {
            nodes: self.nodes.iter().filter(|s| s.len() <= depth).cloned().collect(),
            omega: self.omega.iter().filter(|s| s.len() <= depth).cloned().collect(),
            depth: Some(self.depth.map_or(depth, |d| d.min(depth))),
        }
    }

    /// Both trees share nodes and markers; `self` is contained in `other`.
    pub fn is_subtree_of(&self, other: &AnnotatedTree) -> bool {
        self.nodes.is_subset(&other.nodes) && self.omega.is_subset(&other.omega)
    }

    /// Nodes in breadth-first order: by length, then lexicographically.
    pub fn bfs(&self) -> Vec<&FinSeq> {
        let mut v: Vec<&FinSeq> = self.nodes.iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

/// Supremum of node lengths.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Height {
    Empty,
    Fin(usize),
    Unbounded,
}

impl Height {
    fn reaches(self, n: usize) -> bool {
        match self {
            Height::Empty => false,
            Height::Fin(h) => h >= n,
            Height::Unbounded => true,
        }
    }

    fn shift(self, by: usize) -> Height {
        match self {
            Height::Fin(h) => Height::Fin(h + by),
            other => other,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TreeTerm {
    Empty,
    /// A non-empty, prefix-closed finite set.
    Finite(BTreeSet<FinSeq>),
    /// `cl{handle} ∪ ⋃ handle ⌢ fork_n ⌢ item_n`, with infinitely many
    /// non-empty items.
    Graft {
        handle: FinSeq,
        family: OmegaFamily<TreeTerm>,
    },
    Union(Vec<TreeTerm>),
}

impl Bristle for TreeTerm {
    fn canonical_item(tail: &CanonicalTail, j: u64) -> TreeTerm {
        let b = broom::canonical_btilde(&tail.level(j)).extend_constant(&tail.suffix(j));
        rank::derivative_power(&b.to_tree(), &tail.lowered)
    }
}

impl TreeTerm {
    pub fn finite<I: IntoIterator<Item = FinSeq>>(nodes: I) -> TreeTerm {
        let raw: Vec<FinSeq> = nodes.into_iter().collect();
        let set = cl_tr(&raw);
        if set.is_empty() {
            TreeTerm::Empty
        } else {
            TreeTerm::Finite(set)
        }
    }

    /// `cl{s}`.
    pub fn chain(s: &FinSeq) -> TreeTerm {
        TreeTerm::Finite(s.prefixes().collect())
    }

    pub fn graft(handle: FinSeq, family: OmegaFamily<TreeTerm>) -> TreeTerm {
        TreeTerm::Graft { handle, family }.normalize()
    }

    pub fn union(parts: Vec<TreeTerm>) -> TreeTerm {
        TreeTerm::Union(parts).normalize()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TreeTerm::Empty)
    }

    /// Rewrites to normal form: empty parts dropped, unions flattened with
    /// their finite parts merged, and grafts whose tail is empty unfolded
    /// into a finite union.
    pub fn normalize(self) -> TreeTerm {
        match self {
            TreeTerm::Finite(s) if s.is_empty() => TreeTerm::Empty,
            TreeTerm::Union(parts) => {
                let mut finite = BTreeSet::new();
                let mut rest = Vec::new();
                let mut stack: Vec<TreeTerm> = parts;
                stack.reverse();
                while let Some(p) = stack.pop() {
                    match p.normalize() {
                        TreeTerm::Empty => {}
                        TreeTerm::Finite(s) => finite.extend(s),
                        TreeTerm::Union(inner) => {
                            stack.extend(inner.into_iter().rev());
                        }
                        g => {
                            if !rest.contains(&g) {
                                rest.push(g);
                            }
                        }
                    }
                }
                if !finite.is_empty() {
                    rest.insert(0, TreeTerm::Finite(finite));
                }
                match rest.len() {
                    0 => TreeTerm::Empty,
                    1 => rest.pop().expect("one part"),
                    _ => TreeTerm::Union(rest),
                }
            }
            TreeTerm::Graft { handle, family } => {
                let OmegaFamily { head, forks, tail } = family;
                let head: Vec<(u64, TreeTerm)> =
                    head.into_iter().filter(|(_, t)| !t.is_empty()).collect();
                let tail_empty = match &tail {
                    TailRule::Const(t) => t.is_empty(),
                    TailRule::Cycle(ts) => ts.iter().all(TreeTerm::is_empty),
                    TailRule::Canonical(c) => c.lowered >= c.alpha,
                };
                if tail_empty {
                    let mut parts = vec![TreeTerm::chain(&handle)];
                    for (f, t) in head {
                        parts.push(t.prefixed(&handle.child(f)));
                    }
                    TreeTerm::union(parts)
                } else {
                    TreeTerm::Graft {
                        handle,
                        family: OmegaFamily { head, forks, tail },
                    }
                }
            }
            other => other,
        }
    }

    /// `cl{p} ∪ p ⌢ self` for non-empty `self`.
    pub fn prefixed(&self, p: &FinSeq) -> TreeTerm {
        match self {
            TreeTerm::Empty => TreeTerm::Empty,
            TreeTerm::Finite(s) => TreeTerm::Finite(
                p.prefixes()
                    .chain(s.iter().map(|t| p.concat(t)))
                    .collect(),
            ),
            TreeTerm::Graft { handle, family } => TreeTerm::Graft {
                handle: p.concat(handle),
                family: family.clone(),
            },
            TreeTerm::Union(parts) => {
                TreeTerm::union(parts.iter().map(|t| t.prefixed(p)).collect())
            }
        }
    }

    /// Rejects repeated fork labels, empty cycles and empty canonical ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            TreeTerm::Empty | TreeTerm::Finite(_) => Ok(()),
            TreeTerm::Union(parts) => parts.iter().try_for_each(TreeTerm::validate),
            TreeTerm::Graft { family, .. } => {
                if let Some(f) = family.duplicate_fork() {
                    return Err(Error::DuplicateFork(f));
                }
                validate_tail(&family.tail)?;
                for (_, t) in &family.head {
                    t.validate()?;
                }
                family.explicit_tail().iter().try_for_each(TreeTerm::validate)
            }
        }
    }

    /// Materialises the first `breadth` items of every graft and every node
    /// of length at most `depth`; graft handles are marked.
    pub fn truncate(&self, breadth: usize, depth: usize) -> AnnotatedTree {
        let mut out = AnnotatedTree::new();
        out.depth = Some(depth);
        self.truncate_into(&FinSeq::root(), breadth, depth, &mut out);
        out
    }

    fn truncate_into(&self, base: &FinSeq, breadth: usize, depth: usize, out: &mut AnnotatedTree) {
        match self {
            TreeTerm::Empty => {}
            TreeTerm::Finite(nodes) => {
                for s in nodes {
                    if base.len() + s.len() <= depth {
                        out.insert(&base.concat(s));
                    }
                }
            }
            TreeTerm::Union(parts) => {
                for p in parts {
                    p.truncate_into(base, breadth, depth, out);
                }
            }
            TreeTerm::Graft { handle, family } => {
                let h = base.concat(handle);
                if h.len() > depth {
                    out.insert(&h.restrict(depth).expect("depth below length"));
                    return;
                }
                out.mark(&h);
                if h.len() == depth {
                    return;
                }
                for n in 0..breadth as u64 {
                    let (f, item) = family.item(n);
                    item.truncate_into(&h.child(f), breadth, depth, out);
                }
            }
        }
    }

    pub fn member(&self, s: &FinSeq) -> bool {
        match self {
            TreeTerm::Empty => false,
            TreeTerm::Finite(nodes) => nodes.contains(s),
            TreeTerm::Union(parts) => parts.iter().any(|p| p.member(s)),
            TreeTerm::Graft { handle, family } => {
                if s.len() <= handle.len() {
                    return handle.extends(s);
                }
                if !s.extends(handle) {
                    return false;
                }
                let f = s.entries()[handle.len()];
                family
                    .item_at_fork(f)
                    .is_some_and(|item| item.member(&s.suffix_from(handle.len() + 1)))
            }
        }
    }

    pub fn subtree_infinite(&self) -> bool {
        match self {
            TreeTerm::Graft { .. } => true,
            TreeTerm::Union(parts) => parts.iter().any(TreeTerm::subtree_infinite),
            TreeTerm::Empty | TreeTerm::Finite(_) => false,
        }
    }

    pub fn height(&self) -> Height {
        match self {
            TreeTerm::Empty => Height::Empty,
            TreeTerm::Finite(nodes) => {
                Height::Fin(nodes.iter().map(FinSeq::len).max().unwrap_or(0))
            }
            TreeTerm::Union(parts) => parts
                .iter()
                .map(TreeTerm::height)
                .max()
                .unwrap_or(Height::Empty),
            TreeTerm::Graft { handle, family } => {
                if let TailRule::Canonical(c) = &family.tail {
                    if c.alpha.is_limit() && c.lowered < c.alpha {
                        return Height::Unbounded;
                    }
                }
                let items = family_candidates(family)
                    .map(|(_, t)| t.height())
                    .max()
                    .unwrap_or(Height::Empty);
                let own = Height::Fin(handle.len());
                own.max(items.shift(handle.len() + 1))
            }
        }
    }

    /// A node of length `depth`, if the tree reaches that depth.
    pub fn find_infinite_branch(&self, depth: usize) -> Option<FinSeq> {
        if !self.height().reaches(depth) {
            return None;
        }
        match self {
            TreeTerm::Empty => None,
            TreeTerm::Finite(nodes) => nodes.iter().find(|s| s.len() == depth).cloned(),
            TreeTerm::Union(parts) => parts.iter().find_map(|p| p.find_infinite_branch(depth)),
            TreeTerm::Graft { handle, family } => {
                if depth <= handle.len() {
                    return handle.restrict(depth).ok();
                }
                let need = depth - handle.len() - 1;
                family_candidates(family).find_map(|(f, t)| {
                    t.find_infinite_branch(need)
                        .map(|s| handle.child(f).concat(&s))
                })
            }
        }
    }
}

pub(crate) fn validate_tail<T>(tail: &TailRule<T>) -> Result<()> {
    match tail {
        TailRule::Cycle(ts) if ts.is_empty() => {
            Err(Error::Unclassifiable("empty bristle cycle".into()))
        }
        TailRule::Canonical(c) if c.alpha.is_zero() => {
            Err(Error::Domain("canonical bristles need alpha >= 1".into()))
        }
        _ => Ok(()),
    }
}

/// Items that realise every height occurring in the family: the head, one
/// period of an explicit tail, and for canonical tails enough indices to
/// reach every level.
fn family_candidates(family: &OmegaFamily<TreeTerm>) -> Box<dyn Iterator<Item = (u64, TreeTerm)> + '_> {
    let head = family.head.iter().map(|(f, t)| (*f, t.clone()));
    let k = family.head.len() as u64;
    match &family.tail {
        TailRule::Const(_) | TailRule::Cycle(_) => {
            let p = family.explicit_tail().len() as u64;
            Box::new(head.chain((k..k + p).map(move |n| {
                let (f, t) = family.item(n);
                (f, t.into_owned())
            })))
        }
        TailRule::Canonical(c) => {
            if c.lowered >= c.alpha {
                return Box::new(head);
            }
            if c.alpha.is_limit() {
                // Heights are unbounded along the tail; walk it lazily.
                Box::new(head.chain((k..).map(move |n| {
                    let (f, t) = family.item(n);
                    (f, t.into_owned())
                })))
            } else {
                let p = c.suffixes.len().max(1) as u64;
                Box::new(head.chain((k..k + p).map(move |n| {
                    let (f, t) = family.item(n);
                    (f, t.into_owned())
                })))
            }
        }
    }
}
