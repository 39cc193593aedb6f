//! The infinite-branching derivative `D`, its transfinite iterates, and the
//! rank `min{α | D^(α+1)(T) = ∅}`.

use std::fmt;

use crate::broom::{BroomTerm, ClassTag};
use crate::error::{Error, Result};
use crate::family::{Bristle, CanonicalTail, OmegaFamily, TailRule};
use crate::ordinal::Ordinal;
use crate::seq::{FinSeq, InfSeq};
use crate::term::Term;
use crate::tree::TreeTerm;

/// A rank: `-1` for the empty tree, a countable ordinal for well-founded
/// trees, `ω₁` otherwise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RankValue {
    Empty,
    Countable(Ordinal),
    Uncountable,
}

impl RankValue {
    pub fn nat(n: u64) -> Self {
        RankValue::Countable(Ordinal::nat(n))
    }

    pub fn ordinal(&self) -> Option<&Ordinal> {
        match self {
            RankValue::Countable(a) => Some(a),
            _ => None,
        }
    }

    /// `self + 1`, with `-1 + 1 = 0`.
    pub fn succ(&self) -> RankValue {
        match self {
            RankValue::Empty => RankValue::nat(0),
            RankValue::Countable(a) => RankValue::Countable(a.succ()),
            RankValue::Uncountable => RankValue::Uncountable,
        }
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Empty => write!(f, "-1"),
            RankValue::Countable(a) => write!(f, "{a}"),
            RankValue::Uncountable => write!(f, "w1"),
        }
    }
}

/// `D(T)`: the nodes with infinitely many extensions in `T`.
///
/// A graft handle always has infinitely many extensions, so one step never
/// needs a rank: every bristle is differentiated and the handle chain stays.
pub fn derivative(t: &TreeTerm) -> TreeTerm {
    match t {
        TreeTerm::Empty | TreeTerm::Finite(_) => TreeTerm::Empty,
        TreeTerm::Union(parts) => TreeTerm::union(parts.iter().map(derivative).collect()),
        TreeTerm::Graft { handle, family } => {
            TreeTerm::graft(handle.clone(), lower_family(family, &Ordinal::one(), derivative))
        }
    }
}

/// `D^gamma(T)`, computed with local ranks: a node survives iff its rank
/// is at least `gamma`.
pub fn derivative_power(t: &TreeTerm, gamma: &Ordinal) -> TreeTerm {
    if gamma.is_zero() {
        return t.clone();
    }
    match t {
        TreeTerm::Empty | TreeTerm::Finite(_) => TreeTerm::Empty,
        TreeTerm::Union(parts) => TreeTerm::union(
            parts
                .iter()
                .map(|p| derivative_power(p, gamma))
                .collect(),
        ),
        TreeTerm::Graft { handle, family } => {
            if tree_rank(t) < RankValue::Countable(gamma.clone()) {
                return TreeTerm::Empty;
            }
            TreeTerm::graft(
                handle.clone(),
                lower_family(family, gamma, |b| derivative_power(b, gamma)),
            )
        }
    }
}

fn lower_family(
    family: &OmegaFamily<TreeTerm>,
    gamma: &Ordinal,
    step: impl Fn(&TreeTerm) -> TreeTerm,
) -> OmegaFamily<TreeTerm> {
    let mut out = family.map_explicit(step);
    if let TailRule::Canonical(c) = &mut out.tail {
        c.lowered = c.lowered.add(gamma);
    }
    out
}

/// Rank of `D^lowered` of canonical item `j`.
fn canonical_item_rank(c: &CanonicalTail, level: &Ordinal) -> RankValue {
    // A canonical `B̃_beta` bristle, finitely extended, has rank `beta`.
    match level.checked_sub_left(&c.lowered) {
        Some(r) => RankValue::Countable(r),
        None => RankValue::Empty,
    }
}

/// Closed-form rank of a tree term.
///
/// For a graft with branch ranks `r_n` the handle has rank
/// `max(sup r_n, s)`, where `s` is the order type of the set of `δ` lying
/// below infinitely many `r_n`.
pub fn tree_rank(t: &TreeTerm) -> RankValue {
    match t {
        TreeTerm::Empty => RankValue::Empty,
        TreeTerm::Finite(_) => RankValue::nat(0),
        TreeTerm::Union(parts) => parts
            .iter()
            .map(tree_rank)
            .max()
            .unwrap_or(RankValue::Empty),
        TreeTerm::Graft { family, .. } => {
            let head = family.head.iter().map(|(_, b)| tree_rank(b)).max();
            let s = match &family.tail {
                TailRule::Const(b) => tree_rank(b).succ(),
                TailRule::Cycle(bs) => bs.iter().map(tree_rank).max().unwrap_or(RankValue::Empty).succ(),
                TailRule::Canonical(c) => match c.alpha.predecessor() {
                    Some(pred) => canonical_item_rank(c, &pred).succ(),
                    None => match c.alpha.checked_sub_left(&c.lowered) {
                        Some(r) if !r.is_zero() => RankValue::Countable(r),
                        _ => RankValue::Empty,
                    },
                },
            };
            let r = head.map_or(s.clone(), |h| h.max(s));
            r.max(RankValue::nat(0))
        }
    }
}

pub fn broom_rank(b: &BroomTerm) -> RankValue {
    tree_rank(&b.to_tree())
}

pub fn rank(t: &Term) -> RankValue {
    tree_rank(&t.to_tree())
}

/// Rank by literal iteration of [`derivative`]: `Some(k)` if
/// `D^(k+1)(T)` is empty after at most `fuel` steps.
pub fn rank_iterative(t: &TreeTerm, fuel: u64) -> Option<RankValue> {
    if t.is_empty() {
        return Some(RankValue::Empty);
    }
    let mut cur = t.clone();
    for k in 0..fuel {
        let next = derivative(&cur);
        if next.is_empty() {
            return Some(RankValue::nat(k));
        }
        cur = next;
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnionReport {
    pub rank: RankValue,
    pub members: Vec<RankValue>,
    pub union_term: TreeTerm,
    /// The iterative rank of the union term, when every member has finite
    /// rank.
    pub iterative: Option<RankValue>,
}

/// `r(S_1 ∪ … ∪ S_k) = max r(S_i)`, cross-checked on the union term.
pub fn rank_union(terms: &[Term]) -> Result<UnionReport> {
    if terms.is_empty() {
        return Err(Error::EmptyList);
    }
    let members: Vec<RankValue> = terms.iter().map(rank).collect();
    let max = members.iter().max().cloned().expect("non-empty");
    let union_term = TreeTerm::union(terms.iter().map(Term::to_tree).collect());
    let closed = tree_rank(&union_term);
    if closed != max {
        return Err(Error::Inconsistent(format!(
            "union term has rank {closed}, members give {max}"
        )));
    }
    let iterative = match &max {
        RankValue::Empty => Some(RankValue::Empty),
        RankValue::Countable(a) => match a.as_nat() {
            Some(n) => {
                let it = rank_iterative(&union_term, n + 2);
                if it.as_ref() != Some(&max) {
                    return Err(Error::Inconsistent(format!(
                        "iterated derivative of the union gives {}, members give {max}",
                        it.map_or("no result".into(), |r| r.to_string())
                    )));
                }
                it
            }
            None => None,
        },
        RankValue::Uncountable => None,
    };
    Ok(UnionReport {
        rank: max,
        members,
        union_term,
        iterative,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoverOutcome {
    /// Every truncated target element lies on some cover's extension.
    Coverable,
    /// The target outranks every cover, so no finite cover exists.
    RankGap,
    /// A truncated target element no cover reaches.
    Uncovered(FinSeq),
    /// The element budget ran out before a decision.
    Inconclusive,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverVerdict {
    pub outcome: CoverOutcome,
    pub target_rank: RankValue,
    pub cover_ranks: Vec<RankValue>,
    /// For each cover `j`, the pairs `(s, φ_j(s))` met on the truncation.
    pub maps: Vec<Vec<(FinSeq, FinSeq)>>,
    pub examined: usize,
}

impl CoverVerdict {
    pub fn coverable(&self) -> bool {
        self.outcome == CoverOutcome::Coverable
    }

    pub fn max_cover_rank(&self) -> RankValue {
        self.cover_ranks.iter().max().cloned().unwrap_or(RankValue::Empty)
    }
}

/// Target elements examined before giving up.
pub const COVER_BUDGET: usize = 200_000;

/// Tries to cover the canonical extension `t ↦ t ⌢ 0^ω` of `target` by the
/// canonical extensions of `covers`.
///
/// For every truncated target element `t` the cover element `s` on the path
/// `t ⌢ 0^ω` is located; if both extensions coincide, `φ_j(s)` is `t` when
/// `s ⊏ t` and `s` otherwise. A rank gap decides the question for the full
/// sets; otherwise the truncation is decided pointwise.
pub fn attempt_cover(target: &BroomTerm, covers: &[BroomTerm], breadth: usize) -> CoverVerdict {
    let target_rank = broom_rank(target);
    let cover_ranks: Vec<RankValue> = covers.iter().map(broom_rank).collect();
    let max_cover = cover_ranks.iter().max().cloned().unwrap_or(RankValue::Empty);
    let gap = target_rank > max_cover;

    let zero = InfSeq::constant(0);
    let mut maps: Vec<Vec<(FinSeq, FinSeq)>> = vec![Vec::new(); covers.len()];
    let mut uncovered = None;
    let mut examined = 0usize;
    let finished = target.visit_elements(breadth, usize::MAX, &mut |t| {
        if examined >= COVER_BUDGET {
            return false;
        }
        examined += 1;
        let sigma = t.concat_inf(&zero);
        let mut hit = false;
        for (j, c) in covers.iter().enumerate() {
            let Some(s) = c.element_on_path(&sigma) else {
                continue;
            };
            if s.concat_inf(&zero) != sigma {
                continue;
            }
            let phi = if s.len() < t.len() { t.clone() } else { s.clone() };
            maps[j].push((s, phi));
            hit = true;
            break;
        }
        if !hit && uncovered.is_none() {
            uncovered = Some(t);
            if !gap {
                return false;
            }
        }
        true
    });
    let outcome = if gap {
        CoverOutcome::RankGap
    } else if let Some(t) = uncovered {
        CoverOutcome::Uncovered(t)
    } else if finished {
        CoverOutcome::Coverable
    } else {
        CoverOutcome::Inconclusive
    };
    CoverVerdict {
        outcome,
        target_rank,
        cover_ranks,
        maps,
        examined,
    }
}

/// Replaces every element `s` by the fan `{s ⌢ k : k ∈ ω}`.
pub fn widen(b: &BroomTerm) -> Result<BroomTerm> {
    let class: ClassTag = b.classify()?;
    if !class.level.is_finite() {
        return Err(Error::FiniteRankOnly(class.level.to_string()));
    }
    Ok(widen_unchecked(b))
}

fn widen_unchecked(b: &BroomTerm) -> BroomTerm {
    match b {
        BroomTerm::Singleton(s) => BroomTerm::Broom {
            handle: s.clone(),
            family: OmegaFamily::constant(BroomTerm::Singleton(FinSeq::root())),
        },
        BroomTerm::Broom { handle, family } => {
            let family = match &family.tail {
                TailRule::Canonical(c) => {
                    let p = c.suffixes.len().max(1) as u64;
                    let items = (0..p).map(|j| BroomTerm::canonical_item(c, j)).collect();
                    OmegaFamily {
                        head: family.head.clone(),
                        forks: family.forks,
                        tail: TailRule::Cycle(items),
                    }
                }
                _ => family.clone(),
            };
            BroomTerm::Broom {
                handle: handle.clone(),
                family: family.map_explicit(widen_unchecked),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broom::canonical_btilde;
    use crate::family::ForkRule;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn btree(s: &str) -> TreeTerm {
        canonical_btilde(&ord(s)).to_tree()
    }

    fn f(v: &[u64]) -> FinSeq {
        FinSeq::new(v.to_vec())
    }

    #[test]
    fn single_derivatives() {
        assert_eq!(derivative(&btree("1")), TreeTerm::chain(&FinSeq::root()));
        assert_eq!(derivative(&TreeTerm::finite([f(&[1, 2])])), TreeTerm::Empty);
        assert_eq!(derivative(&TreeTerm::Empty), TreeTerm::Empty);
        let d = derivative(&btree("1")).truncate(50, 50);
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn powers() {
        assert_eq!(derivative_power(&btree("2"), &ord("2")), TreeTerm::chain(&FinSeq::root()));
        assert_eq!(derivative_power(&btree("2"), &ord("0")), btree("2"));
        assert_eq!(derivative_power(&btree("w"), &ord("w")), TreeTerm::chain(&FinSeq::root()));
        assert_eq!(derivative_power(&btree("w"), &ord("w+1")), TreeTerm::Empty);
        let t = btree("3");
        assert_eq!(derivative_power(&t, &ord("2")), derivative(&derivative(&t)));
    }

    #[test]
    fn ranks() {
        assert_eq!(tree_rank(&TreeTerm::Empty), RankValue::Empty);
        assert_eq!(tree_rank(&TreeTerm::finite([f(&[2])])), RankValue::nat(0));
        for a in ["0", "1", "2", "3", "w", "w+1", "w*2", "w^2"] {
            assert_eq!(broom_rank(&canonical_btilde(&ord(a))), RankValue::Countable(ord(a)));
        }
    }

    #[test]
    fn iteration() {
        assert_eq!(rank_iterative(&btree("3"), 10), Some(RankValue::nat(3)));
        assert_eq!(rank_iterative(&TreeTerm::finite([f(&[4])]), 1), Some(RankValue::nat(0)));
        assert_eq!(rank_iterative(&btree("w"), 50), None);
    }

    #[test]
    fn unions() {
        let b = |s: &str| Term::Broom(canonical_btilde(&ord(s)));
        assert_eq!(rank_union(&[b("1"), b("2")]).unwrap().rank, RankValue::nat(2));
        assert_eq!(
            rank_union(&[Term::Tree(TreeTerm::Empty), Term::Tree(TreeTerm::Empty)])
                .unwrap()
                .rank,
            RankValue::Empty
        );
        let r = rank_union(&[Term::Broom(BroomTerm::Singleton(FinSeq::root())), b("3"), b("1")])
            .unwrap();
        assert_eq!(r.rank, RankValue::nat(3));
        assert_eq!(r.iterative, Some(RankValue::nat(3)));
        assert_eq!(rank_union(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn covers() {
        let b = |s: &str| canonical_btilde(&ord(s));
        let v = attempt_cover(&b("2"), &[b("1"), b("1")], 10);
        assert_eq!(v.outcome, CoverOutcome::RankGap);
        assert_eq!((v.target_rank.clone(), v.max_cover_rank()), (RankValue::nat(2), RankValue::nat(1)));

        let s3 = BroomTerm::Singleton(f(&[3]));
        assert!(attempt_cover(&s3, &[s3.clone()], 5).coverable());

        let half = |offset| BroomTerm::Broom {
            handle: FinSeq::root(),
            family: OmegaFamily {
                head: Vec::new(),
                forks: ForkRule::affine(2, offset),
                tail: TailRule::Const(Box::new(BroomTerm::Singleton(FinSeq::root()))),
            },
        };
        let v = attempt_cover(&b("1"), &[half(0), half(1)], 20);
        assert!(v.coverable());
        assert_eq!(v.maps[0].len() + v.maps[1].len(), 20);
        let v = attempt_cover(&b("1"), &[half(0)], 20);
        assert_eq!(v.outcome, CoverOutcome::Uncovered(f(&[1])));
    }

    #[test]
    fn widening() {
        let w = widen(&BroomTerm::Singleton(FinSeq::root())).unwrap();
        assert_eq!(w, canonical_btilde(&ord("1")));
        assert_eq!(broom_rank(&widen(&canonical_btilde(&ord("1"))).unwrap()), RankValue::nat(2));
        assert!(matches!(
            widen(&canonical_btilde(&ord("w"))),
            Err(Error::FiniteRankOnly(_))
        ));
    }
}
