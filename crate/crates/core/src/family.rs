//! Finite descriptions of ω-indexed families `n ↦ (fork_n, item_n)`.
//!
//! A family is an explicit head of `k` items followed by a tail rule indexed
//! from zero: item `n >= k` is tail item `n - k`. Tail forks are affine in
//! the tail index; tail items are constant, cyclic, or canonical brooms
//! indexed through `pi`.

use std::borrow::Cow;
use std::fmt;

use crate::ordinal::{self, Ordinal};
use crate::seq::FinSeq;

/// Tail forks `j ↦ scale * j + offset`, `scale >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ForkRule {
    pub scale: u64,
    pub offset: u64,
}

impl ForkRule {
    pub const IDENTITY: ForkRule = ForkRule {
        scale: 1,
        offset: 0,
    };

    pub fn affine(scale: u64, offset: u64) -> Self {
        ForkRule { scale, offset }
    }

    pub fn at(&self, j: u64) -> u64 {
        self.scale * j + self.offset
    }

    pub fn index_of(&self, fork: u64) -> Option<u64> {
        if self.scale == 0 || fork < self.offset || (fork - self.offset) % self.scale != 0 {
            return None;
        }
        Some((fork - self.offset) / self.scale)
    }

    /// Forks at tail indices `p, p + period, p + 2 period, …`.
    pub fn residue(&self, p: u64, period: u64) -> ForkRule {
        ForkRule {
            scale: self.scale * period,
            offset: self.at(p),
        }
    }
}

impl fmt::Display for ForkRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == ForkRule::IDENTITY {
            write!(f, "id")
        } else {
            write!(f, "(affine {} {})", self.scale, self.offset)
        }
    }
}

/// Tail items `j ↦ D^lowered(canonical broom of level pi(alpha, j))`, each
/// leaf extended by `suffixes[j mod len]`.
///
/// Broom families always carry `lowered = 0`; tree families use it to
/// record pending derivative powers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalTail {
    pub alpha: Ordinal,
    pub suffixes: Vec<FinSeq>,
    pub lowered: Ordinal,
}

impl CanonicalTail {
    pub fn new(alpha: Ordinal) -> Self {
        CanonicalTail {
            alpha,
            suffixes: Vec::new(),
            lowered: Ordinal::zero(),
        }
    }

    pub fn suffix(&self, j: u64) -> FinSeq {
        if self.suffixes.is_empty() {
            FinSeq::root()
        } else {
            self.suffixes[(j % self.suffixes.len() as u64) as usize].clone()
        }
    }

    /// Level of the canonical broom behind tail item `j`.
    pub fn level(&self, j: u64) -> Ordinal {
        ordinal::pi(&self.alpha, j).expect("canonical tails have alpha >= 1")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TailRule<T> {
    Const(Box<T>),
    Cycle(Vec<T>),
    Canonical(CanonicalTail),
}

/// Item types that can materialise a canonical tail item.
pub trait Bristle: Clone {
    fn canonical_item(tail: &CanonicalTail, j: u64) -> Self;
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OmegaFamily<T> {
    pub head: Vec<(u64, T)>,
    pub forks: ForkRule,
    pub tail: TailRule<T>,
}

impl<T> OmegaFamily<T> {
    /// Identity forks with a constant item.
    pub fn constant(item: T) -> Self {
        OmegaFamily {
            head: Vec::new(),
            forks: ForkRule::IDENTITY,
            tail: TailRule::Const(Box::new(item)),
        }
    }

    pub fn fork(&self, n: u64) -> u64 {
        let k = self.head.len() as u64;
        if n < k {
            self.head[n as usize].0
        } else {
            self.forks.at(n - k)
        }
    }

    /// First family index carrying the fork label `f`.
    pub fn index_of_fork(&self, f: u64) -> Option<u64> {
        if let Some(i) = self.head.iter().position(|(g, _)| *g == f) {
            return Some(i as u64);
        }
        self.forks
            .index_of(f)
            .map(|j| j + self.head.len() as u64)
    }

    /// A fork label used twice, if any.
    pub fn duplicate_fork(&self) -> Option<u64> {
        if self.forks.scale == 0 {
            return Some(self.forks.offset);
        }
        for (i, (f, _)) in self.head.iter().enumerate() {
            if self.head[..i].iter().any(|(g, _)| g == f) || self.forks.index_of(*f).is_some() {
                return Some(*f);
            }
        }
        None
    }

    /// Applies `f` to every explicit item; canonical tails are kept as is.
    pub fn map_explicit<U>(&self, mut f: impl FnMut(&T) -> U) -> OmegaFamily<U> {
        let head = self.head.iter().map(|(k, t)| (*k, f(t))).collect();
        let tail = match &self.tail {
            TailRule::Const(t) => TailRule::Const(Box::new(f(t))),
            TailRule::Cycle(ts) => TailRule::Cycle(ts.iter().map(&mut f).collect()),
            TailRule::Canonical(c) => TailRule::Canonical(c.clone()),
        };
        OmegaFamily {
            head,
            forks: self.forks,
            tail,
        }
    }

    /// Items of a constant or cyclic tail; empty for canonical tails.
    pub fn explicit_tail(&self) -> &[T] {
        match &self.tail {
            TailRule::Const(t) => std::slice::from_ref(t.as_ref()),
            TailRule::Cycle(ts) => ts,
            TailRule::Canonical(_) => &[],
        }
    }
}

impl<T: Bristle> OmegaFamily<T> {
    pub fn item(&self, n: u64) -> (u64, Cow<'_, T>) {
        let k = self.head.len() as u64;
        if n < k {
            let (f, t) = &self.head[n as usize];
            return (*f, Cow::Borrowed(t));
        }
        let j = n - k;
        let item = match &self.tail {
            TailRule::Const(t) => Cow::Borrowed(t.as_ref()),
            TailRule::Cycle(ts) => Cow::Borrowed(&ts[(j % ts.len() as u64) as usize]),
            TailRule::Canonical(c) => Cow::Owned(T::canonical_item(c, j)),
        };
        (self.forks.at(j), item)
    }

    /// The item under fork label `f`.
    pub fn item_at_fork(&self, f: u64) -> Option<Cow<'_, T>> {
        self.index_of_fork(f).map(|n| self.item(n).1)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fork_rules() {
        let r = ForkRule::affine(2, 1);
        assert_eq!(r.at(3), 7);
        assert_eq!(r.index_of(7), Some(3));
        assert_eq!(r.index_of(6), None);
        assert_eq!(r.index_of(0), None);
        assert_eq!(ForkRule::IDENTITY.to_string(), "id");
        assert_eq!(r.residue(1, 3), ForkRule::affine(6, 3));
    }

    #[test]
    fn duplicate_detection() {
        let mut fam = OmegaFamily::constant(());
        assert_eq!(fam.duplicate_fork(), None);
        fam.head.push((0, ()));
        assert_eq!(fam.duplicate_fork(), Some(0));
        fam.forks = ForkRule::affine(1, 1);
        assert_eq!(fam.duplicate_fork(), None);
        fam.head.push((0, ()));
        assert_eq!(fam.duplicate_fork(), Some(0));
    }

    #[test]
    fn lcm_small() {
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(1, 5), 5);
    }
}
