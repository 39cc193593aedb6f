//! Arithmetic on descriptive class names: `F`/`G`-Borel classes, their
//! Borel counterparts, and the complexity bounds of broom spaces.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, Parity};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    F,
    G,
    A,
    M,
    Sigma0,
    Pi0,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::F => "F",
            Family::G => "G",
            Family::A => "A",
            Family::M => "M",
            Family::Sigma0 => "Sigma",
            Family::Pi0 => "Pi",
        }
    }

    fn min_level(self) -> u64 {
        match self {
            Family::A | Family::M => 0,
            _ => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClassName {
    family: Family,
    level: Ordinal,
}

impl ClassName {
    pub fn new(family: Family, level: Ordinal) -> Result<Self> {
        if level < Ordinal::nat(family.min_level()) {
            return Err(Error::Domain(format!(
                "{} classes start at level {}",
                family.label(),
                family.min_level()
            )));
        }
        Ok(ClassName { family, level })
    }

    fn make(family: Family, level: Ordinal) -> Self {
        ClassName::new(family, level).expect("level in range")
    }

    pub fn f(level: Ordinal) -> Self {
        ClassName::make(Family::F, level)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn level(&self) -> &Ordinal {
        &self.level
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.label(), self.level)
    }
}

impl FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (family, rest) = [
            ("Sigma", Family::Sigma0),
            ("Pi", Family::Pi0),
            ("F", Family::F),
            ("G", Family::G),
            ("A", Family::A),
            ("M", Family::M),
        ]
        .into_iter()
        .find_map(|(p, fam)| t.strip_prefix(p).map(|r| (fam, r)))
        .ok_or_else(|| Error::Domain(format!("'{s}' is not a class name")))?;
        ClassName::new(family, rest.parse()?)
    }
}

/// A family of infinite brooms: `E ⊆ E_alpha`, or `E ⊆ ⋃_{β<λ} E_β`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FamilyClassDescriptor {
    ExactLevel(Ordinal),
    BelowLimit(Ordinal),
}

impl FamilyClassDescriptor {
    pub fn below_limit(lambda: Ordinal) -> Result<Self> {
        if !lambda.is_limit() {
            return Err(Error::Domain(format!("{lambda} is not a limit ordinal")));
        }
        Ok(FamilyClassDescriptor::BelowLimit(lambda))
    }
}

impl fmt::Display for FamilyClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyClassDescriptor::ExactLevel(a) => write!(f, "E<={a}"),
            FamilyClassDescriptor::BelowLimit(l) => write!(f, "E<{l}"),
        }
    }
}

impl FromStr for FamilyClassDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(r) = t.strip_prefix("E<=") {
            Ok(FamilyClassDescriptor::ExactLevel(r.parse()?))
        } else if let Some(r) = t.strip_prefix("E<") {
            FamilyClassDescriptor::below_limit(r.parse()?)
        } else {
            Err(Error::Domain(format!(
                "'{s}' is not a family descriptor (expected E<=ord or E<lim)"
            )))
        }
    }
}

/// `F_{λ+2m+1}` for `alpha = λ + m`.
pub fn y_complexity(alpha: &Ordinal) -> ClassName {
    let split = alpha.split_limit_finite();
    ClassName::f(split.limit_part.add(&Ordinal::nat(2 * split.finite_part + 1)))
}

/// The absolute class of the broom space of a family.
pub fn absolute_bound(family: &FamilyClassDescriptor) -> Result<ClassName> {
    match family {
        FamilyClassDescriptor::ExactLevel(a) => {
            let split = a.split_limit_finite();
            let extra = if a.is_finite() { 1 } else { 3 };
            Ok(ClassName::f(
                split.limit_part.add(&Ordinal::nat(2 * split.finite_part + extra)),
            ))
        }
        FamilyClassDescriptor::BelowLimit(l) => {
            if !l.is_limit() {
                return Err(Error::Domain(format!("{l} is not a limit ordinal")));
            }
            Ok(ClassName::f(l.succ()))
        }
    }
}

fn check_even_at_least_four(alpha: &Ordinal) -> Result<()> {
    if alpha.parity() != Parity::Even || *alpha < Ordinal::nat(4) {
        return Err(Error::Domain(format!(
            "alpha must be even and at least 4, got {alpha}"
        )));
    }
    Ok(())
}

/// The broom family whose space realises `T_alpha`.
pub fn talagrand_family(alpha: &Ordinal) -> Result<FamilyClassDescriptor> {
    check_even_at_least_four(alpha)?;
    if let Some(n) = alpha.as_nat() {
        return Ok(FamilyClassDescriptor::ExactLevel(Ordinal::nat(n / 2)));
    }
    if alpha.is_limit() {
        return Ok(FamilyClassDescriptor::BelowLimit(alpha.clone()));
    }
    let split = alpha.split_limit_finite();
    let n = split.finite_part / 2 - 1;
    Ok(FamilyClassDescriptor::ExactLevel(
        split.limit_part.add(&Ordinal::nat(n)),
    ))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    pub complexity: ClassName,
    pub not_absolute: ClassName,
    pub absolute: ClassName,
}

/// The three classes attached to `T_alpha`; the absolute class is derived
/// through [`talagrand_family`] and [`absolute_bound`] and checked against
/// `F_{alpha+1}`.
pub fn main_theorem_profile(alpha: &Ordinal) -> Result<Profile> {
    let absolute = absolute_bound(&talagrand_family(alpha)?)?;
    let expected = ClassName::f(alpha.succ());
    if absolute != expected {
        return Err(Error::Inconsistent(format!(
            "absolute bound {absolute} differs from {expected}"
        )));
    }
    Ok(Profile {
        complexity: ClassName::f(Ordinal::nat(3)),
        not_absolute: ClassName::f(alpha.clone()),
        absolute,
    })
}

/// `alpha >= beta >= 3` with `alpha` odd.
pub fn corollary_pair_feasible(alpha: &Ordinal, beta: &Ordinal) -> bool {
    alpha >= beta && *beta >= Ordinal::nat(3) && alpha.parity() == Parity::Odd
}

/// Level of the Borel class matching an `F`/`G` class of level `alpha`:
/// `n - 1` below ω, `alpha` from ω on.
fn borel_level(alpha: &Ordinal) -> Ordinal {
    match alpha.as_nat() {
        Some(n) => Ordinal::nat(n - 1),
        None => alpha.clone(),
    }
}

/// Whether `F_alpha` sits in a multiplicative Borel class.
fn f_is_multiplicative(alpha: &Ordinal) -> bool {
    alpha.parity() == Parity::Odd
}

/// The Borel class containing an `F` or `G` class in any space.
pub fn class_inclusion(c: &ClassName) -> Result<Vec<ClassName>> {
    let mult = match c.family {
        Family::F => f_is_multiplicative(&c.level),
        Family::G => !f_is_multiplicative(&c.level),
        _ => return Err(Error::AlreadyBorel(c.to_string())),
    };
    let fam = if mult { Family::M } else { Family::A };
    Ok(vec![ClassName::make(fam, borel_level(&c.level))])
}

/// The classes equal to `c` in a metrizable space, in the order
/// `[Σ⁰/Π⁰ class, Borel class]` for `F`/`G` input and `[F/G class, Borel
/// class]` for `Σ⁰`/`Π⁰` input.
pub fn metrizable_identity(c: &ClassName) -> Result<Vec<ClassName>> {
    let level = &c.level;
    match c.family {
        Family::F | Family::G => {
            let mult = (c.family == Family::F) == f_is_multiplicative(level);
            let (pointclass, borel) = if mult {
                (Family::Pi0, Family::M)
            } else {
                (Family::Sigma0, Family::A)
            };
            Ok(vec![
                ClassName::make(pointclass, level.clone()),
                ClassName::make(borel, borel_level(level)),
            ])
        }
        Family::Sigma0 | Family::Pi0 => {
            let mult = c.family == Family::Pi0;
            let fg = if mult == f_is_multiplicative(level) {
                Family::F
            } else {
                Family::G
            };
            let borel = if mult { Family::M } else { Family::A };
            Ok(vec![
                ClassName::make(fg, level.clone()),
                ClassName::make(borel, borel_level(level)),
            ])
        }
        Family::A | Family::M => {
            if level.is_zero() {
                return Err(Error::Domain(
                    "A0 = M0 matches no single Sigma/Pi class".into(),
                ));
            }
            let pointlevel = match level.as_nat() {
                Some(n) => Ordinal::nat(n + 1),
                None => level.clone(),
            };
            let mult = c.family == Family::M;
            let point = if mult { Family::Pi0 } else { Family::Sigma0 };
            let fg = if mult == f_is_multiplicative(&pointlevel) {
                Family::F
            } else {
                Family::G
            };
            Ok(vec![
                ClassName::make(fg, pointlevel.clone()),
                ClassName::make(point, pointlevel),
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn class(s: &str) -> ClassName {
        s.parse().unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(class("F3").to_string(), "F3");
        assert_eq!(class("Sigmaw+1").to_string(), "Sigmaw+1");
        assert_eq!(class("A0").level(), &Ordinal::zero());
        assert!("F0".parse::<ClassName>().is_err());
        assert!("Pi0".parse::<ClassName>().is_err());
        assert!("X3".parse::<ClassName>().is_err());
    }

    #[test]
    fn y_classes() {
        assert_eq!(y_complexity(&ord("1")), class("F3"));
        assert_eq!(y_complexity(&ord("2")), class("F5"));
        assert_eq!(y_complexity(&ord("w")), class("Fw+1"));
        assert_eq!(y_complexity(&ord("w+1")), class("Fw+3"));
    }

    #[test]
    fn absolute_bounds() {
        let e = |s: &str| s.parse::<FamilyClassDescriptor>().unwrap();
        assert_eq!(absolute_bound(&e("E<=1")).unwrap(), class("F3"));
        assert_eq!(absolute_bound(&e("E<w")).unwrap(), class("Fw+1"));
        assert_eq!(absolute_bound(&e("E<=w+1")).unwrap(), class("Fw+5"));
        assert!("E<w+1".parse::<FamilyClassDescriptor>().is_err());
    }

    #[test]
    fn talagrand() {
        use FamilyClassDescriptor::*;
        assert_eq!(talagrand_family(&ord("6")).unwrap(), ExactLevel(ord("3")));
        assert_eq!(talagrand_family(&ord("w")).unwrap(), BelowLimit(ord("w")));
        assert_eq!(talagrand_family(&ord("w+4")).unwrap(), ExactLevel(ord("w+1")));
        assert!(talagrand_family(&ord("5")).is_err());
        assert!(talagrand_family(&ord("2")).is_err());
    }

    #[test]
    fn profiles() {
        let p = main_theorem_profile(&ord("4")).unwrap();
        assert_eq!((p.complexity, p.not_absolute, p.absolute), (class("F3"), class("F4"), class("F5")));
        let p = main_theorem_profile(&ord("w")).unwrap();
        assert_eq!(p.absolute, class("Fw+1"));
        let p = main_theorem_profile(&ord("w+2")).unwrap();
        assert_eq!((p.not_absolute, p.absolute), (class("Fw+2"), class("Fw+3")));
    }

    #[test]
    fn pairs() {
        assert!(corollary_pair_feasible(&ord("5"), &ord("3")));
        assert!(!corollary_pair_feasible(&ord("4"), &ord("3")));
        assert!(corollary_pair_feasible(&ord("w+1"), &ord("w+1")));
        assert!(!corollary_pair_feasible(&ord("3"), &ord("5")));
    }

    #[test]
    fn inclusions() {
        assert_eq!(class_inclusion(&class("F3")).unwrap(), vec![class("M2")]);
        assert_eq!(class_inclusion(&class("G4")).unwrap(), vec![class("M3")]);
        assert_eq!(class_inclusion(&class("Fw")).unwrap(), vec![class("Aw")]);
        assert!(matches!(class_inclusion(&class("M2")), Err(Error::AlreadyBorel(_))));
    }

    #[test]
    fn metrizable() {
        assert_eq!(metrizable_identity(&class("F2")).unwrap(), vec![class("Sigma2"), class("A1")]);
        assert_eq!(metrizable_identity(&class("F3")).unwrap(), vec![class("Pi3"), class("M2")]);
        assert_eq!(
            metrizable_identity(&class("Gw+1")).unwrap(),
            vec![class("Sigmaw+1"), class("Aw+1")]
        );
        assert_eq!(metrizable_identity(&class("Pi3")).unwrap(), vec![class("F3"), class("M2")]);
        assert_eq!(metrizable_identity(&class("M2")).unwrap(), vec![class("F3"), class("Pi3")]);
        assert!(metrizable_identity(&class("A0")).is_err());
    }
}
