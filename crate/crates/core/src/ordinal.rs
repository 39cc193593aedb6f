//! Countable ordinals below epsilon-zero in hereditary Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing list of `(exponent, coefficient)`
//! terms, each exponent itself an [`Ordinal`]. The representation is unique,
//! so the derived structural equality is ordinal equality.
//!
//! The module also fixes the enumerations `pi(alpha, n)` used to build the
//! maximal trees `T_alpha` and the canonical limit-level brooms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Term {
    exp: Ordinal,
    coeff: u64,
}

/// A countable ordinal below epsilon-zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Decomposition `alpha = limit_part + finite_part`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LimitSplit {
    /// Zero or a limit ordinal.
    pub limit_part: Ordinal,
    pub finite_part: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exp: Ordinal::zero(),
                    coeff: n,
                }],
            }
        }
    }

    /// The first infinite ordinal.
    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `w^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Ordinal::omega_pow_times(exp, 1)
    }

    /// `w^exp * coeff`; zero when `coeff == 0`.
    pub fn omega_pow_times(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term { exp, coeff }],
        }
    }

    /// Builds an ordinal from CNF terms given in any order; terms are summed
    /// with ordinal addition from left to right.
    pub fn from_terms<I: IntoIterator<Item = (Ordinal, u64)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::omega_pow_times(e, c)))
    }

    /// CNF terms as `(exponent, coefficient)` pairs, exponents decreasing.
    pub fn terms(&self) -> impl Iterator<Item = (&Ordinal, u64)> {
        self.terms.iter().map(|t| (&t.exp, t.coeff))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exp.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero())
    }

    /// `alpha - 1` for successor ordinals.
    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a last term");
        last.coeff -= 1;
        if last.coeff == 0 {
            terms.pop();
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Exponent of the leading term; zero for zero.
    pub fn leading_exponent(&self) -> Ordinal {
        self.terms
            .first()
            .map(|t| t.exp.clone())
            .unwrap_or_default()
    }

    /// Ordinal sum `self + other`.
    ///
    /// # Panics
    ///
    /// Panics if a coefficient overflows `u64`; see [`Ordinal::checked_add`].
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        self.checked_add(other).expect("ordinal coefficient overflow")
    }

    /// Ordinal sum, or `None` if a coefficient overflows `u64`.
    pub fn checked_add(&self, other: &Ordinal) -> Option<Ordinal> {
        let Some(first) = other.terms.first() else {
            return Some(self.clone());
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = None;
        for t in &self.terms {
            match t.exp.cmp(&first.exp) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    merged = Some(t.coeff);
                    break;
                }
                Ordering::Less => break,
            }
        }
        let mut rest = other.terms.iter();
        let head = rest.next().expect("non-empty");
        terms.push(Term {
            exp: head.exp.clone(),
            coeff: head.coeff.checked_add(merged.unwrap_or(0))?,
        });
        terms.extend(rest.cloned());
        Some(Ordinal { terms })
    }

    /// Left subtraction: the unique `d` with `sub + d = self`, if `sub <= self`.
    pub fn checked_sub_left(&self, sub: &Ordinal) -> Option<Ordinal> {
        if *sub > *self {
            return None;
        }
        for (i, a) in self.terms.iter().enumerate() {
            let Some(b) = sub.terms.get(i) else {
                return Some(Ordinal {
                    terms: self.terms[i..].to_vec(),
                });
            };
            if a == b {
                continue;
            }
            if a.exp > b.exp {
                return Some(Ordinal {
                    terms: self.terms[i..].to_vec(),
                });
            }
            // Same exponent, larger coefficient (sub <= self).
            let mut terms = vec![Term {
                exp: a.exp.clone(),
                coeff: a.coeff - b.coeff,
            }];
            terms.extend_from_slice(&self.terms[i + 1..]);
            return Some(Ordinal { terms });
        }
        Some(Ordinal::zero())
    }

    pub fn split_limit_finite(&self) -> LimitSplit {
        if self.is_successor() {
            let mut terms = self.terms.clone();
            let last = terms.pop().expect("successor");
            LimitSplit {
                limit_part: Ordinal { terms },
                finite_part: last.coeff,
            }
        } else {
            LimitSplit {
                limit_part: self.clone(),
                finite_part: 0,
            }
        }
    }

    /// Parity of the finite part; zero and limit ordinals are even.
    pub fn parity(&self) -> Parity {
        if self.split_limit_finite().finite_part % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Grade used by the canonical enumeration: the sum of all coefficients
    /// and the grades of all exponents, hereditarily.
    pub fn size(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff + t.exp.size()).sum()
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.exp.cmp(&b.exp).then(a.coeff.cmp(&b.coeff));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl std::ops::Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

// ---------------------------------------------------------------------------
// Canonical enumerations
// ---------------------------------------------------------------------------

/// All ordinals of the given grade that are strictly below `bound`, ascending.
fn grade_below(grade: u64, bound: &Ordinal) -> Vec<Ordinal> {
    type Memo = HashMap<(u64, Ordinal), Vec<Ordinal>>;
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    let mut memo = MEMO
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    grade_below_memo(grade, bound, &mut memo)
}

fn grade_below_memo(
    grade: u64,
    bound: &Ordinal,
    memo: &mut HashMap<(u64, Ordinal), Vec<Ordinal>>,
) -> Vec<Ordinal> {
    if bound.is_zero() {
        return Vec::new();
    }
    if grade == 0 {
        return vec![Ordinal::zero()];
    }
    if let Some(b) = bound.as_nat() {
        return if grade < b { vec![Ordinal::nat(grade)] } else { Vec::new() };
    }
    let key = (grade, bound.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let exp_bound = bound.leading_exponent().succ();
    let mut out = Vec::new();
    for exp_grade in 0..grade {
        for exp in grade_below_memo(exp_grade, &exp_bound, memo) {
            let head_pow = Ordinal::omega_pow(exp.clone());
            for coeff in 1..=(grade - exp_grade) {
                let rest_grade = grade - exp_grade - coeff;
                for rest in grade_below_memo(rest_grade, &head_pow, memo) {
                    let ord = Ordinal::omega_pow_times(exp.clone(), coeff).add(&rest);
                    if ord < *bound {
                        out.push(ord);
                    }
                }
            }
        }
    }
    out.sort();
    memo.insert(key, out.clone());
    out
}

#[derive(Default)]
struct Enumeration {
    grades: Vec<Vec<Ordinal>>,
}

impl Enumeration {
    fn ensure_grade(&mut self, alpha: &Ordinal, grade: usize) {
        while self.grades.len() <= grade {
            let g = self.grades.len() as u64;
            self.grades.push(grade_below(g, alpha));
        }
    }
}

fn enumerations() -> &'static Mutex<HashMap<Ordinal, Enumeration>> {
    static CACHE: OnceLock<Mutex<HashMap<Ordinal, Enumeration>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The fixed map `pi_alpha : w -> alpha`.
///
/// For a successor `alpha = beta + 1` every index maps to `beta`. For a limit
/// `alpha` this is the bijection listing the ordinals below `alpha` by grade,
/// ascending within a grade; below `w` it is the identity.
pub fn pi(alpha: &Ordinal, n: u64) -> Result<Ordinal> {
    if alpha.is_zero() {
        return Err(Error::EmptyRange);
    }
    if let Some(pred) = alpha.predecessor() {
        return Ok(pred);
    }
    let mut cache = enumerations().lock().unwrap_or_else(|e| e.into_inner());
    let entry = cache.entry(alpha.clone()).or_default();
    let mut remaining = n as usize;
    let mut grade = 0usize;
    loop {
        entry.ensure_grade(alpha, grade);
        let level = &entry.grades[grade];
        if remaining < level.len() {
            return Ok(level[remaining].clone());
        }
        remaining -= level.len();
        grade += 1;
    }
}

/// Index of `beta` in the enumeration of a limit `alpha`.
pub fn pi_inverse(alpha: &Ordinal, beta: &Ordinal) -> Result<u64> {
    if !alpha.is_limit() {
        return Err(Error::Domain(format!(
            "pi_inverse needs a limit ordinal, got {alpha}"
        )));
    }
    if beta >= alpha {
        return Err(Error::Domain(format!("{beta} is not below {alpha}")));
    }
    let grade = beta.size() as usize;
    let mut cache = enumerations().lock().unwrap_or_else(|e| e.into_inner());
    let entry = cache.entry(alpha.clone()).or_default();
    entry.ensure_grade(alpha, grade);
    let before: usize = entry.grades[..grade].iter().map(Vec::len).sum();
    let pos = entry.grades[grade]
        .binary_search(beta)
        .expect("every ordinal below alpha appears in its grade");
    Ok((before + pos) as u64)
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            match t.exp.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None if t.exp == Ordinal::omega() => write!(f, "w^w")?,
                None => write!(f, "w^({})", t.exp)?,
            }
            if t.coeff > 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

struct OrdParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> OrdParser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::OrdinalSyntax {
            input: self.src.to_string(),
            offset: self.pos,
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("natural number out of range"))
    }

    fn is_omega(c: char) -> bool {
        c == 'w' || c == 'ω'
    }

    fn sum(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat('+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        self.skip_ws();
        match self.peek() {
            Some(c) if Self::is_omega(c) => {
                self.bump();
                let exp = if self.eat('^') {
                    self.exponent()?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.eat('*') { self.nat()? } else { 1 };
                Ok(Ordinal::omega_pow_times(exp, coeff))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some('(') => {
                self.bump();
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected 'w', a natural number or '('")),
        }
    }

    /// Exponents are atomic: a natural, a parenthesised ordinal, or `w` with
    /// its own (right-associative) exponent.
    fn exponent(&mut self) -> Result<Ordinal> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some('(') => {
                self.bump();
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if Self::is_omega(c) => {
                self.bump();
                let exp = if self.eat('^') {
                    self.exponent()?
                } else {
                    Ordinal::one()
                };
                Ok(Ordinal::omega_pow(exp))
            }
            _ => Err(self.err("expected an exponent")),
        }
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = OrdParser { src: s, pos: 0 };
        let ord = p.sum()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(ord)
    }
}
