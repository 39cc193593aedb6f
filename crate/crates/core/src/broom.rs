//! Broom sets: antichains built from a handle, injective forks and an
//! ω-family of smaller brooms.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{lcm, Bristle, CanonicalTail, OmegaFamily, TailRule};
use crate::ordinal::Ordinal;
use crate::seq::{FinSeq, InfSeq};
use crate::tree::{self, TreeTerm};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BroomTerm {
    Singleton(FinSeq),
    /// `⋃ handle ⌢ fork_n ⌢ bristle_n`.
    Broom {
        handle: FinSeq,
        family: OmegaFamily<BroomTerm>,
    },
}

impl Bristle for BroomTerm {
    fn canonical_item(tail: &CanonicalTail, j: u64) -> BroomTerm {
        canonical_btilde(&tail.level(j)).extend_constant(&tail.suffix(j))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassKind {
    B,
    Btilde,
}

/// The least class `B_level` containing a broom, and whether it is also a
/// `B̃_level` term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClassTag {
    pub kind: ClassKind,
    pub level: Ordinal,
}

impl ClassTag {
    pub fn btilde(level: Ordinal) -> Self {
        ClassTag {
            kind: ClassKind::Btilde,
            level,
        }
    }

    pub fn b(level: Ordinal) -> Self {
        ClassTag {
            kind: ClassKind::B,
            level,
        }
    }

    pub fn is_btilde(&self) -> bool {
        self.kind == ClassKind::Btilde
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::B => write!(f, "B"),
            ClassKind::Btilde => write!(f, "Btilde"),
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.kind, self.level)
    }
}

/// Per-leaf suffixes for [`BroomTerm::extend_finitely`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SuffixRule {
    /// Every leaf gets the same suffix.
    Constant(FinSeq),
    /// Leaves below top-level item `n` get `suffixes[n mod len]`.
    Cycle(Vec<FinSeq>),
}

/// Outcome of [`BroomTerm::check_d`] on one truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DReport {
    pub breadth: usize,
    pub depth: usize,
    pub elements: usize,
    /// Two comparable elements, if the truncation is not an antichain.
    pub antichain_violation: Option<(FinSeq, FinSeq)>,
    pub probes: Vec<ProbeWitness>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbeWitness {
    pub probe: InfSeq,
    /// Least `m` with at most one element comparable to `probe | m`.
    pub m: Option<usize>,
}

impl DReport {
    pub fn passed(&self) -> bool {
        self.antichain_violation.is_none() && self.probes.iter().all(|p| p.m.is_some())
    }
}

/// The canonical `B̃_alpha` term: empty handle, forks `n`, constant bristles
/// at successor levels and `pi`-indexed bristles at limits.
pub fn canonical_btilde(alpha: &Ordinal) -> BroomTerm {
    if alpha.is_zero() {
        return BroomTerm::Singleton(FinSeq::root());
    }
    let family = match alpha.predecessor() {
        Some(pred) => OmegaFamily::constant(canonical_btilde(&pred)),
        None => OmegaFamily {
            head: Vec::new(),
            forks: crate::family::ForkRule::IDENTITY,
            tail: TailRule::Canonical(CanonicalTail::new(alpha.clone())),
        },
    };
    BroomTerm::Broom {
        handle: FinSeq::root(),
        family,
    }
}

impl BroomTerm {
    pub fn singleton(s: FinSeq) -> BroomTerm {
        BroomTerm::Singleton(s)
    }

    pub fn classify(&self) -> Result<ClassTag> {
        class_of(self)
    }

    /// `h ⌢ self`.
    pub fn prefix(&self, h: &FinSeq) -> BroomTerm {
        match self {
            BroomTerm::Singleton(s) => BroomTerm::Singleton(h.concat(s)),
            BroomTerm::Broom { handle, family } => BroomTerm::Broom {
                handle: h.concat(handle),
                family: family.clone(),
            },
        }
    }

    /// Every element extended by `suffix`.
    pub fn extend_constant(&self, suffix: &FinSeq) -> BroomTerm {
        if suffix.is_empty() {
            return self.clone();
        }
        match self {
            BroomTerm::Singleton(s) => BroomTerm::Singleton(s.concat(suffix)),
            BroomTerm::Broom { handle, family } => {
                let mut fam = family.map_explicit(|b| b.extend_constant(suffix));
                if let TailRule::Canonical(c) = &mut fam.tail {
                    if c.suffixes.is_empty() {
                        c.suffixes.push(FinSeq::root());
                    }
                    for s in &mut c.suffixes {
                        *s = s.concat(suffix);
                    }
                }
                BroomTerm::Broom {
                    handle: handle.clone(),
                    family: fam,
                }
            }
        }
    }

    pub fn extend_finitely(&self, rule: &SuffixRule) -> BroomTerm {
        let cycle = match rule {
            SuffixRule::Constant(s) => return self.extend_constant(s),
            SuffixRule::Cycle(cs) if cs.is_empty() => return self.clone(),
            SuffixRule::Cycle(cs) => cs,
        };
        let p = cycle.len();
        let (handle, family) = match self {
            BroomTerm::Singleton(s) => return BroomTerm::Singleton(s.concat(&cycle[0])),
            BroomTerm::Broom { handle, family } => (handle, family),
        };
        let k = family.head.len();
        let suffix = |n: usize| &cycle[n % p];
        let head = family
            .head
            .iter()
            .enumerate()
            .map(|(i, (f, b))| (*f, b.extend_constant(suffix(i))))
            .collect();
        let tail = match &family.tail {
            TailRule::Const(b) => {
                TailRule::Cycle((0..p).map(|j| b.extend_constant(suffix(k + j))).collect())
            }
            TailRule::Cycle(bs) => {
                let len = lcm(bs.len() as u64, p as u64) as usize;
                TailRule::Cycle(
                    (0..len)
                        .map(|j| bs[j % bs.len()].extend_constant(suffix(k + j)))
                        .collect(),
                )
            }
            TailRule::Canonical(c) => {
                let q = c.suffixes.len().max(1);
                let len = lcm(q as u64, p as u64);
                let suffixes = (0..len)
                    .map(|j| c.suffix(j).concat(suffix(k + j as usize)))
                    .collect();
                TailRule::Canonical(CanonicalTail {
                    alpha: c.alpha.clone(),
                    suffixes,
                    lowered: c.lowered.clone(),
                })
            }
        };
        BroomTerm::Broom {
            handle: handle.clone(),
            family: OmegaFamily {
                head,
                forks: family.forks,
                tail,
            },
        }
    }

    /// Rejects repeated fork labels and malformed tails.
    pub fn validate(&self) -> Result<()> {
        match self {
            BroomTerm::Singleton(_) => Ok(()),
            BroomTerm::Broom { family, .. } => {
                if let Some(f) = family.duplicate_fork() {
                    return Err(Error::DuplicateFork(f));
                }
                tree::validate_tail(&family.tail)?;
                if let TailRule::Canonical(c) = &family.tail {
                    if !c.lowered.is_zero() {
                        return Err(Error::Domain(
                            "broom bristles cannot carry a derivative power".into(),
                        ));
                    }
                }
                for (_, b) in &family.head {
                    b.validate()?;
                }
                family.explicit_tail().iter().try_for_each(BroomTerm::validate)
            }
        }
    }

    /// The tree generated by the denoted set.
    pub fn to_tree(&self) -> TreeTerm {
        match self {
            BroomTerm::Singleton(s) => TreeTerm::chain(s),
            BroomTerm::Broom { handle, family } => {
                TreeTerm::graft(handle.clone(), family.map_explicit(BroomTerm::to_tree))
            }
        }
    }

    /// Calls `visit` on every element reachable through the first `breadth`
    /// items of each broom, skipping elements longer than `depth`. Stops
    /// early when `visit` returns `false`; the result says whether the walk
    /// finished.
    pub fn visit_elements(
        &self,
        breadth: usize,
        depth: usize,
        visit: &mut dyn FnMut(FinSeq) -> bool,
    ) -> bool {
        self.visit_from(&FinSeq::root(), breadth, depth, visit)
    }

    fn visit_from(
        &self,
        base: &FinSeq,
        breadth: usize,
        depth: usize,
        visit: &mut dyn FnMut(FinSeq) -> bool,
    ) -> bool {
        match self {
            BroomTerm::Singleton(s) => {
                if base.len() + s.len() <= depth {
                    visit(base.concat(s))
                } else {
                    true
                }
            }
            BroomTerm::Broom { handle, family } => {
                let h = base.concat(handle);
                if h.len() >= depth {
                    return true;
                }
                for n in 0..breadth as u64 {
                    let (f, b) = family.item(n);
                    if !b.visit_from(&h.child(f), breadth, depth, visit) {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Elements of the `(breadth, depth)` truncation, repetitions kept.
    pub fn elements(&self, breadth: usize, depth: usize) -> Vec<FinSeq> {
        let mut out = Vec::new();
        self.visit_elements(breadth, depth, &mut |s| {
            out.push(s);
            true
        });
        out
    }

    /// Checks membership in the family D on a truncation: pairwise
    /// incomparability, and for every probe `σ` a length `m` such that
    /// `σ | m` is comparable with at most one element.
    pub fn check_d(&self, breadth: usize, depth: usize, probes: &[InfSeq]) -> DReport {
        let mut elems = self.elements(breadth, depth);
        elems.sort();
        let antichain_violation = elems
            .windows(2)
            .find(|w| w[1].extends(&w[0]))
            .map(|w| (w[0].clone(), w[1].clone()));
        let probes = probes
            .iter()
            .map(|sigma| {
                let m = (0..=depth).find(|&m| {
                    let p = sigma.restrict(m);
                    elems.iter().filter(|s| s.comparable(&p)).take(2).count() <= 1
                });
                ProbeWitness {
                    probe: sigma.clone(),
                    m,
                }
            })
            .collect();
        DReport {
            breadth,
            depth,
            elements: elems.len(),
            antichain_violation,
            probes,
        }
    }

    /// `s ⌢ 0 ⌢ 0 ⌢ …` for every element `s` of the breadth truncation.
    pub fn sample_infinite_extension(&self, breadth: usize) -> Vec<InfSeq> {
        let zero = InfSeq::constant(0);
        self.elements(breadth, usize::MAX)
            .into_iter()
            .map(|s| s.concat_inf(&zero))
            .collect()
    }

    /// The element that `sigma` extends, if any.
    pub fn element_on_path(&self, sigma: &InfSeq) -> Option<FinSeq> {
        match self {
            BroomTerm::Singleton(s) => sigma.extends(s).then(|| s.clone()),
            BroomTerm::Broom { handle, family } => {
                if !sigma.extends(handle) {
                    return None;
                }
                let f = sigma.get(handle.len());
                let b = family.item_at_fork(f)?;
                let rest = b.element_on_path(&sigma.shift(handle.len() + 1))?;
                Some(handle.child(f).concat(&rest))
            }
        }
    }
}

/// The least class of a broom term, read off its structure.
pub fn class_of(b: &BroomTerm) -> Result<ClassTag> {
    let family = match b {
        BroomTerm::Singleton(_) => return Ok(ClassTag::btilde(Ordinal::zero())),
        BroomTerm::Broom { family, .. } => family,
    };
    tree::validate_tail(&family.tail)?;
    let mut parts: Vec<ClassTag> = family
        .head
        .iter()
        .map(|(_, b)| class_of(b))
        .chain(family.explicit_tail().iter().map(class_of))
        .collect::<Result<_>>()?;
    let mut limit = None;
    if let TailRule::Canonical(c) = &family.tail {
        if !c.lowered.is_zero() {
            return Err(Error::Unclassifiable(
                "canonical bristles with a pending derivative".into(),
            ));
        }
        match c.alpha.predecessor() {
            Some(pred) => parts.push(ClassTag::btilde(pred)),
            None => limit = Some(c.alpha.clone()),
        }
    }
    let attained = parts.iter().map(|p| p.level.succ()).max();
    let level = match (&attained, &limit) {
        (Some(a), Some(l)) => a.clone().max(l.clone()),
        (Some(a), None) => a.clone(),
        (None, Some(l)) => l.clone(),
        (None, None) => return Err(Error::Unclassifiable("broom without bristles".into())),
    };
    let all_btilde = parts.iter().all(ClassTag::is_btilde);
    let shaped = match &limit {
        Some(l) => parts.iter().all(|p| p.level < *l),
        None => parts.windows(2).all(|w| w[0].level == w[1].level),
    };
    Ok(ClassTag {
        kind: if all_btilde && shaped {
            ClassKind::Btilde
        } else {
            ClassKind::B
        },
        level,
    })
}
