//! Finite and infinite sequences of naturals: the ground alphabet for trees
//! and brooms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Common read access for finite and infinite sequences.
pub trait Sequence {
    /// `None` for infinite sequences.
    fn length(&self) -> Option<usize>;
    fn at(&self, i: usize) -> Option<u64>;
}

/// A finite sequence; the empty sequence is the root `r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FinSeq(Vec<u64>);

impl FinSeq {
    pub fn root() -> Self {
        FinSeq(Vec::new())
    }

    pub fn new(entries: Vec<u64>) -> Self {
        FinSeq(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entry_sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// `self` followed by the single entry `k`.
    pub fn child(&self, k: u64) -> FinSeq {
        let mut v = self.0.clone();
        v.push(k);
        FinSeq(v)
    }

    /// The immediate prefix, `None` for the root.
    pub fn parent(&self) -> Option<FinSeq> {
        if self.0.is_empty() {
            None
        } else {
            Some(FinSeq(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// All prefixes, from the root up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = FinSeq> + '_ {
        (0..=self.0.len()).map(|n| FinSeq(self.0[..n].to_vec()))
    }

    pub fn concat(&self, tail: &FinSeq) -> FinSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&tail.0);
        FinSeq(v)
    }

    pub fn concat_inf(&self, tail: &InfSeq) -> InfSeq {
        let mut prefix = self.0.clone();
        prefix.extend_from_slice(&tail.prefix);
        InfSeq::new(prefix, tail.period.clone()).expect("period stays non-empty")
    }

    pub fn restrict(&self, n: usize) -> Result<FinSeq> {
        if n > self.0.len() {
            return Err(Error::Range {
                len: self.0.len(),
                requested: n,
            });
        }
        Ok(FinSeq(self.0[..n].to_vec()))
    }

    /// Drops the first `n` entries.
    pub fn suffix_from(&self, n: usize) -> FinSeq {
        FinSeq(self.0[n.min(self.0.len())..].to_vec())
    }

    /// `self` extends `s`.
    pub fn extends(&self, s: &FinSeq) -> bool {
        extends(self, s)
    }

    pub fn comparable(&self, other: &FinSeq) -> bool {
        comparable(self, other)
    }
}

impl From<Vec<u64>> for FinSeq {
    fn from(v: Vec<u64>) -> Self {
        FinSeq(v)
    }
}

impl<const N: usize> From<[u64; N]> for FinSeq {
    fn from(v: [u64; N]) -> Self {
        FinSeq(v.to_vec())
    }
}

impl Sequence for FinSeq {
    fn length(&self) -> Option<usize> {
        Some(self.0.len())
    }

    fn at(&self, i: usize) -> Option<u64> {
        self.0.get(i).copied()
    }
}

/// An eventually periodic infinite sequence `prefix ⌢ period ⌢ period ⌢ …`.
///
/// Stored normalised (minimal period, shortest prefix) so that equality of
/// descriptors is equality of sequences.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InfSeq {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

impl InfSeq {
    pub fn new(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Domain("an infinite sequence needs a non-empty period".into()));
        }
        let mut s = InfSeq { prefix, period };
        s.normalize();
        Ok(s)
    }

    /// `c, c, c, …`
    pub fn constant(c: u64) -> Self {
        InfSeq {
            prefix: Vec::new(),
            period: vec![c],
        }
    }

    /// `prefix ⌢ c ⌢ c ⌢ …`
    pub fn eventually_constant(prefix: Vec<u64>, c: u64) -> Self {
        InfSeq::new(prefix, vec![c]).expect("non-empty period")
    }

    fn normalize(&mut self) {
        let p = self.period.len();
        for d in 1..=p {
            if p % d == 0 && (d..p).all(|i| self.period[i] == self.period[i - d]) {
                self.period.truncate(d);
                break;
            }
        }
        while let (Some(&a), Some(&b)) = (self.prefix.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn get(&self, i: usize) -> u64 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn restrict(&self, n: usize) -> FinSeq {
        FinSeq((0..n).map(|i| self.get(i)).collect())
    }

    /// The sequence with its first `n` entries removed.
    pub fn shift(&self, n: usize) -> InfSeq {
        if n <= self.prefix.len() {
            InfSeq::new(self.prefix[n..].to_vec(), self.period.clone()).expect("non-empty")
        } else {
            let k = (n - self.prefix.len()) % self.period.len();
            let mut period = self.period.clone();
            period.rotate_left(k);
            InfSeq::new(Vec::new(), period).expect("non-empty")
        }
    }

    pub fn extends(&self, s: &FinSeq) -> bool {
        extends(self, s)
    }
}

impl Sequence for InfSeq {
    fn length(&self) -> Option<usize> {
        None
    }

    fn at(&self, i: usize) -> Option<u64> {
        Some(self.get(i))
    }
}

/// `t` extends `s`: `|t| >= |s|` and `t` restricted to `|s|` is `s`.
pub fn extends<T: Sequence + ?Sized>(t: &T, s: &FinSeq) -> bool {
    if t.length().is_some_and(|n| n < s.len()) {
        return false;
    }
    s.entries()
        .iter()
        .enumerate()
        .all(|(i, &v)| t.at(i) == Some(v))
}

pub fn comparable(s: &FinSeq, t: &FinSeq) -> bool {
    extends(s, t) || extends(t, s)
}

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[u64]) -> fmt::Result {
    for (i, v) in entries.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_entries(f, &self.0)?;
        write!(f, ")")
    }
}

impl fmt::Display for InfSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_entries(f, &self.prefix)?;
        if self.prefix.is_empty() {
            write!(f, "| ")?;
        } else {
            write!(f, " | ")?;
        }
        write_entries(f, &self.period)?;
        write!(f, ")")
    }
}

fn parse_nats(s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::Domain(format!("'{tok}' is not a natural number")))
        })
        .collect()
}

fn strip_parens(s: &str) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Domain(format!("expected a parenthesised sequence, got '{s}'")))
}

impl FromStr for FinSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = strip_parens(s)?;
        if inner.contains('|') {
            return Err(Error::Domain(format!("'{s}' is an infinite sequence")));
        }
        Ok(FinSeq(parse_nats(inner)?))
    }
}

impl FromStr for InfSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = strip_parens(s)?;
        let (prefix, period) = inner
            .split_once('|')
            .ok_or_else(|| Error::Domain(format!("'{s}' has no '|' before its period")))?;
        InfSeq::new(parse_nats(prefix)?, parse_nats(period)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[u64]) -> FinSeq {
        FinSeq::new(v.to_vec())
    }

    #[test]
    fn extension_and_comparability() {
        assert!(extends(&f(&[1, 2, 3]), &f(&[1, 2])));
        assert!(!extends(&f(&[1, 3]), &f(&[1, 2])));
        assert!(extends(&FinSeq::root(), &FinSeq::root()));
        assert!(comparable(&f(&[1, 2]), &f(&[1])));
        assert!(!comparable(&f(&[1, 2]), &f(&[1, 3])));
        assert!(comparable(&FinSeq::root(), &f(&[7])));
        assert!(InfSeq::constant(4).extends(&f(&[4, 4, 4])));
    }

    #[test]
    fn concatenation() {
        assert_eq!(f(&[1]).concat(&f(&[2, 3])), f(&[1, 2, 3]));
        assert_eq!(FinSeq::root().concat(&f(&[5])), f(&[5]));
        let s = f(&[4]).concat_inf(&InfSeq::constant(0));
        assert_eq!(s.restrict(4), f(&[4, 0, 0, 0]));
        assert_eq!(s, InfSeq::eventually_constant(vec![4], 0));
    }

    #[test]
    fn restriction() {
        assert_eq!(f(&[1, 2, 3]).restrict(2).unwrap(), f(&[1, 2]));
        assert_eq!(InfSeq::constant(9).restrict(0), FinSeq::root());
        assert_eq!(InfSeq::constant(7).restrict(3), f(&[7, 7, 7]));
        assert!(matches!(
            f(&[1]).restrict(2),
            Err(Error::Range { len: 1, requested: 2 })
        ));
    }

    #[test]
    fn normalisation_makes_descriptors_canonical() {
        let a = InfSeq::new(vec![1, 2, 0, 0], vec![0, 0]).unwrap();
        let b = InfSeq::new(vec![1, 2], vec![0]).unwrap();
        assert_eq!(a, b);
        let c = InfSeq::new(vec![3, 2], vec![3, 2]).unwrap();
        assert_eq!(c.prefix(), &[] as &[u64]);
        assert_eq!(c.period(), &[3, 2]);
        assert_eq!(c.shift(1).restrict(3), f(&[2, 3, 2]));
    }

    #[test]
    fn text_forms() {
        assert_eq!("(1 2 3)".parse::<FinSeq>().unwrap(), f(&[1, 2, 3]));
        assert_eq!("()".parse::<FinSeq>().unwrap(), FinSeq::root());
        let s: InfSeq = "(1 2 | 0)".parse().unwrap();
        assert_eq!(s.restrict(5), f(&[1, 2, 0, 0, 0]));
        let p: InfSeq = "(1 | 2 3)".parse().unwrap();
        assert_eq!(p.restrict(5), f(&[1, 2, 3, 2, 3]));
        assert_eq!(p.to_string(), "(1 | 2 3)");
        assert_eq!(InfSeq::constant(0).to_string(), "(| 0)");
        assert!("(1 |)".parse::<InfSeq>().is_err());
    }
}
