//! S-expression reader and writer for terms, admissible maps and annotated
//! trees.
//!
//! ```text
//! (singleton (1 2))
//! (broom (handle ()) (forks id) (bristles (const (singleton ()))))
//! (broom (handle (3)) (forks (affine 2 1)) (bristles (pi-indexed w (suffixes (0))))
//!        (head (0 (singleton ()))))
//! (finite (()) ((1)) ((1 2)))
//! (graft (handle ()) (forks id) (bristles (canonical w (lowered 2))))
//! (union empty (finite ()))
//! (admissible (alpha 2) (canonical (1 2 | 0)))
//! (admissible (alpha 1) (bounds 3 1) (table (() ()) ((0) ()) ((1) (4))))
//! (image (depth 3) (nodes (1 0) (2)) (omega ()))
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::broom::BroomTerm;
use crate::error::{Error, Result};
use crate::family::{CanonicalTail, ForkRule, OmegaFamily, TailRule};
use crate::ordinal::Ordinal;
use crate::seq::{FinSeq, InfSeq};
use crate::talpha::{AdmissibleMap, MapRule};
use crate::term::Term;
use crate::tree::{AnnotatedTree, TreeTerm};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Sexp {
    Atom {
        text: String,
        line: usize,
        column: usize,
    },
    List {
        items: Vec<Sexp>,
        line: usize,
        column: usize,
    },
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom { line, column, .. } | Sexp::List { line, column, .. } => (*line, *column),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, column) = self.pos();
        Error::Syntax {
            line,
            column,
            msg: msg.into(),
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom { text, .. } => Some(text),
            Sexp::List { .. } => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List { items, .. } => Some(items),
            Sexp::Atom { .. } => None,
        }
    }

    fn expect_list(&self, what: &str) -> Result<&[Sexp]> {
        self.list().ok_or_else(|| self.err(format!("expected {what}")))
    }

    fn expect_atom(&self, what: &str) -> Result<&str> {
        self.atom().ok_or_else(|| self.err(format!("expected {what}")))
    }

    /// `(keyword …)` → `keyword` and the remaining items.
    fn form(&self) -> Option<(&str, &[Sexp])> {
        let items = self.list()?;
        let head = items.first()?.atom()?;
        Some((head, &items[1..]))
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            msg: msg.into(),
        }
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<Sexp>> {
        self.skip_space();
        let (line, column) = (self.line, self.column);
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.chars.peek() {
                        None => {
                            return Err(Error::Syntax {
                                line,
                                column,
                                msg: "unclosed '('".into(),
                            })
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List {
                                items,
                                line,
                                column,
                            }));
                        }
                        Some(_) => items.push(self.read()?.expect("input remains")),
                    }
                }
            }
            ')' => Err(self.error("unexpected ')'")),
            '|' => {
                self.bump();
                Ok(Some(Sexp::Atom {
                    text: "|".into(),
                    line,
                    column,
                }))
            }
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some(c) => text.push(c),
                        None => {
                            return Err(Error::Syntax {
                                line,
                                column,
                                msg: "unterminated string".into(),
                            })
                        }
                    }
                }
                Ok(Some(Sexp::Atom { text, line, column }))
            }
            _ => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || "()|\";".contains(c) {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom { text, line, column }))
            }
        }
    }
}

/// Every top-level expression in `text`.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>> {
    let mut r = Reader::new(text);
    let mut out = Vec::new();
    while let Some(s) = r.read()? {
        out.push(s);
    }
    Ok(out)
}

/// Exactly one expression.
pub fn parse_one(text: &str) -> Result<Sexp> {
    let mut r = Reader::new(text);
    let first = r.read()?.ok_or_else(|| r.error("empty input"))?;
    r.skip_space();
    if r.chars.peek().is_some() {
        return Err(r.error("trailing input after the first expression"));
    }
    Ok(first)
}

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

fn nat(s: &Sexp) -> Result<u64> {
    let a = s.expect_atom("a natural number")?;
    a.parse()
        .map_err(|_| s.err(format!("'{a}' is not a natural number")))
}

fn ordinal(s: &Sexp) -> Result<Ordinal> {
    let a = s.expect_atom("an ordinal")?;
    a.parse().map_err(|e| s.err(format!("{e}")))
}

pub fn fin_seq(s: &Sexp) -> Result<FinSeq> {
    let items = s.expect_list("a finite sequence")?;
    items.iter().map(nat).collect::<Result<Vec<_>>>().map(FinSeq::new)
}

pub fn inf_seq(s: &Sexp) -> Result<InfSeq> {
    let items = s.expect_list("an infinite sequence")?;
    let bar = items
        .iter()
        .position(|x| x.atom() == Some("|"))
        .ok_or_else(|| s.err("an infinite sequence needs '|' before its period"))?;
    let prefix = items[..bar].iter().map(nat).collect::<Result<Vec<_>>>()?;
    let period = items[bar + 1..].iter().map(nat).collect::<Result<Vec<_>>>()?;
    InfSeq::new(prefix, period).map_err(|e| s.err(e.to_string()))
}

fn fork_rule(s: &Sexp) -> Result<ForkRule> {
    match s {
        Sexp::Atom { text, .. } if text == "id" => Ok(ForkRule::IDENTITY),
        Sexp::Atom { text, .. } => Err(Error::UnknownForkRule(text.clone())),
        Sexp::List { items, .. } => match items.first().and_then(Sexp::atom) {
            Some("affine") if items.len() == 3 => {
                let scale = nat(&items[1])?;
                if scale == 0 {
                    return Err(items[1].err("affine forks need a positive scale"));
                }
                Ok(ForkRule::affine(scale, nat(&items[2])?))
            }
            Some("affine") => Err(s.err("affine forks take a scale and an offset")),
            Some(other) => Err(Error::UnknownForkRule(other.into())),
            None => Err(Error::UnknownForkRule(format!("{s}"))),
        },
    }
}

/// Splits `(keyword (clause …) …)` clauses by name, rejecting duplicates
/// and unknown ones.
fn clauses<'a>(
    parent: &Sexp,
    items: &'a [Sexp],
    allowed: &[&str],
) -> Result<BTreeMap<&'a str, (&'a Sexp, &'a [Sexp])>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, rest) = item
            .form()
            .ok_or_else(|| item.err("expected a (keyword …) clause"))?;
        if !allowed.contains(&name) {
            return Err(item.err(format!("unknown clause '{name}'")));
        }
        if out.insert(name, (item, rest)).is_some() {
            return Err(item.err(format!("repeated clause '{name}'")));
        }
    }
    let _ = parent;
    Ok(out)
}

fn single<'a>(clause: (&'a Sexp, &'a [Sexp]), what: &str) -> Result<&'a Sexp> {
    match clause.1 {
        [x] => Ok(x),
        _ => Err(clause.0.err(format!("expected exactly one {what}"))),
    }
}

fn suffixes(rest: &[Sexp], parent: &Sexp) -> Result<(Vec<FinSeq>, Option<Ordinal>)> {
    let cl = clauses(parent, rest, &["suffixes", "lowered"])?;
    let sfx = match cl.get("suffixes") {
        Some((_, xs)) => xs.iter().map(fin_seq).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let lowered = match cl.get("lowered") {
        Some(c) => Some(ordinal(single(*c, "ordinal")?)?),
        None => None,
    };
    Ok((sfx, lowered))
}

fn family<T>(
    s: &Sexp,
    items: &[Sexp],
    canonical_name: &str,
    item: &dyn Fn(&Sexp) -> Result<T>,
) -> Result<(FinSeq, OmegaFamily<T>)> {
    let cl = clauses(s, items, &["handle", "forks", "bristles", "head"])?;
    let handle = match cl.get("handle") {
        Some(c) => fin_seq(single(*c, "handle")?)?,
        None => FinSeq::root(),
    };
    let forks = match cl.get("forks") {
        Some(c) => fork_rule(single(*c, "fork rule")?)?,
        None => ForkRule::IDENTITY,
    };
    let bristles = single(
        *cl.get("bristles").ok_or_else(|| s.err("missing (bristles …)"))?,
        "bristle rule",
    )?;
    let (kind, rest) = bristles
        .form()
        .ok_or_else(|| bristles.err("expected a bristle rule"))?;
    let tail = match kind {
        "const" => match rest {
            [x] => TailRule::Const(Box::new(item(x)?)),
            _ => return Err(bristles.err("const takes one term")),
        },
        "cycle" if !rest.is_empty() => TailRule::Cycle(rest.iter().map(item).collect::<Result<_>>()?),
        "cycle" => return Err(bristles.err("cycle needs at least one term")),
        k if k == canonical_name => {
            let (alpha_s, more) = rest
                .split_first()
                .ok_or_else(|| bristles.err("missing ordinal"))?;
            let alpha = ordinal(alpha_s)?;
            if alpha.is_zero() {
                return Err(alpha_s.err("canonical bristles need an ordinal >= 1"));
            }
            let (sfx, lowered) = suffixes(more, bristles)?;
            if lowered.is_some() && canonical_name == "pi-indexed" {
                return Err(bristles.err("broom bristles take no (lowered …)"));
            }
            TailRule::Canonical(CanonicalTail {
                alpha,
                suffixes: sfx,
                lowered: lowered.unwrap_or_default(),
            })
        }
        other => return Err(bristles.err(format!("unknown bristle rule '{other}'"))),
    };
    let head = match cl.get("head") {
        Some((_, xs)) => xs
            .iter()
            .map(|x| match x.list() {
                Some([f, t]) => Ok((nat(f)?, item(t)?)),
                _ => Err(x.err("expected (fork term)")),
            })
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    Ok((handle, OmegaFamily { head, forks, tail }))
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

pub fn broom_from(s: &Sexp) -> Result<BroomTerm> {
    let (kind, rest) = s.form().ok_or_else(|| s.err("expected a broom term"))?;
    match kind {
        "singleton" => match rest {
            [x] => Ok(BroomTerm::Singleton(fin_seq(x)?)),
            _ => Err(s.err("singleton takes one sequence")),
        },
        "broom" => {
            let (handle, family) = family(s, rest, "pi-indexed", &broom_from)?;
            Ok(BroomTerm::Broom { handle, family })
        }
        other => Err(s.err(format!("unknown broom form '{other}'"))),
    }
}

fn tree_node(s: &Sexp) -> Result<FinSeq> {
    match s.list() {
        Some([inner @ Sexp::List { .. }]) => fin_seq(inner),
        _ => fin_seq(s),
    }
}

pub fn tree_from(s: &Sexp) -> Result<TreeTerm> {
    if s.atom() == Some("empty") {
        return Ok(TreeTerm::Empty);
    }
    let (kind, rest) = s.form().ok_or_else(|| s.err("expected a tree term"))?;
    match kind {
        "empty" if rest.is_empty() => Ok(TreeTerm::Empty),
        "finite" => Ok(TreeTerm::finite(
            rest.iter().map(tree_node).collect::<Result<Vec<_>>>()?,
        )),
        "graft" => {
            let (handle, family) = family(s, rest, "canonical", &tree_from)?;
            Ok(TreeTerm::graft(handle, family))
        }
        "union" => Ok(TreeTerm::union(rest.iter().map(tree_from).collect::<Result<_>>()?)),
        "singleton" | "broom" => Ok(broom_from(s)?.to_tree()),
        other => Err(s.err(format!("unknown tree form '{other}'"))),
    }
}

pub fn term_from(s: &Sexp) -> Result<Term> {
    match s.form() {
        Some(("singleton" | "broom", _)) => Ok(Term::Broom(broom_from(s)?)),
        _ => Ok(Term::Tree(tree_from(s)?)),
    }
}

/// Reads and validates a single broom or tree term.
pub fn parse_term(text: &str) -> Result<Term> {
    let t = term_from(&parse_one(text)?)?;
    match &t {
        Term::Broom(b) => b.validate()?,
        Term::Tree(t) => t.validate()?,
    }
    Ok(t)
}

pub fn parse_broom(text: &str) -> Result<BroomTerm> {
    match parse_term(text)? {
        Term::Broom(b) => Ok(b),
        Term::Tree(_) => Err(Error::Syntax {
            line: 1,
            column: 1,
            msg: "expected a broom term, found a tree term".into(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Maps and annotated trees
// ---------------------------------------------------------------------------

pub fn parse_admissible(text: &str) -> Result<AdmissibleMap> {
    let s = parse_one(text)?;
    let (kind, rest) = s.form().ok_or_else(|| s.err("expected (admissible …)"))?;
    if kind != "admissible" {
        return Err(s.err("expected (admissible …)"));
    }
    let cl = clauses(&s, rest, &["alpha", "canonical", "bounds", "table"])?;
    let domain = ordinal(single(
        *cl.get("alpha").ok_or_else(|| s.err("missing (alpha …)"))?,
        "ordinal",
    )?)?;
    let rule = match (cl.get("canonical"), cl.get("table")) {
        (Some(c), None) => MapRule::CanonicalFromSigma(inf_seq(single(*c, "sequence")?)?),
        (None, Some((_, rows))) => {
            let (b_clause, bounds) = cl
                .get("bounds")
                .ok_or_else(|| s.err("a table needs (bounds breadth depth)"))?;
            let [b, d] = bounds else {
                return Err(b_clause.err("bounds take a breadth and a depth"));
            };
            let mut table = BTreeMap::new();
            for row in *rows {
                match row.list() {
                    Some([node, image]) => {
                        if table.insert(fin_seq(node)?, fin_seq(image)?).is_some() {
                            return Err(row.err("node listed twice"));
                        }
                    }
                    _ => return Err(row.err("expected (node image)")),
                }
            }
            MapRule::Tabulated {
                table,
                breadth: nat(b)? as usize,
                depth: nat(d)? as usize,
            }
        }
        _ => return Err(s.err("exactly one of (canonical …) and (table …) is required")),
    };
    Ok(AdmissibleMap { domain, rule })
}

pub fn parse_annotated(text: &str) -> Result<AnnotatedTree> {
    let s = parse_one(text)?;
    let (kind, rest) = s.form().ok_or_else(|| s.err("expected (image …)"))?;
    if kind != "image" && kind != "tree" {
        return Err(s.err("expected (image …)"));
    }
    let cl = clauses(&s, rest, &["depth", "nodes", "omega"])?;
    let seqs = |name: &str| -> Result<Vec<FinSeq>> {
        match cl.get(name) {
            Some((_, xs)) => xs.iter().map(tree_node).collect(),
            None => Ok(Vec::new()),
        }
    };
    let nodes = seqs("nodes")?;
    let omega = seqs("omega")?;
    let depth = match cl.get("depth") {
        Some(c) => Some(nat(single(*c, "depth")?)? as usize),
        None => None,
    };
    for m in &omega {
        if !nodes.iter().any(|n| n.extends(m)) {
            return Err(s.err(format!("marked node {m} is not in the tree")));
        }
    }
    Ok(AnnotatedTree::from_parts(nodes, omega, depth))
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

fn ord_atom(a: &Ordinal) -> String {
    let s = a.to_string();
    if s.contains('(') || s.contains(' ') {
        format!("\"{s}\"")
    } else {
        s
    }
}

fn write_family<T>(
    f: &mut fmt::Formatter<'_>,
    handle: &FinSeq,
    family: &OmegaFamily<T>,
    canonical_name: &str,
    item: &dyn Fn(&T, &mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    write!(f, " (handle {handle}) (forks {}) (bristles ", family.forks)?;
    match &family.tail {
        TailRule::Const(t) => {
            write!(f, "(const ")?;
            item(t, f)?;
            write!(f, ")")?;
        }
        TailRule::Cycle(ts) => {
            write!(f, "(cycle")?;
            for t in ts {
                write!(f, " ")?;
                item(t, f)?;
            }
            write!(f, ")")?;
        }
        TailRule::Canonical(c) => {
            write!(f, "({canonical_name} {}", ord_atom(&c.alpha))?;
            if !c.suffixes.is_empty() {
                write!(f, " (suffixes")?;
                for s in &c.suffixes {
                    write!(f, " {s}")?;
                }
                write!(f, ")")?;
            }
            if !c.lowered.is_zero() {
                write!(f, " (lowered {})", ord_atom(&c.lowered))?;
            }
            write!(f, ")")?;
        }
    }
    write!(f, ")")?;
    if !family.head.is_empty() {
        write!(f, " (head")?;
        for (k, t) in &family.head {
            write!(f, " ({k} ")?;
            item(t, f)?;
            write!(f, ")")?;
        }
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for BroomTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BroomTerm::Singleton(s) => write!(f, "(singleton {s})"),
            BroomTerm::Broom { handle, family } => {
                write!(f, "(broom")?;
                write_family(f, handle, family, "pi-indexed", &|b, f| write!(f, "{b}"))?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for TreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeTerm::Empty => write!(f, "empty"),
            TreeTerm::Finite(nodes) => {
                write!(f, "(finite")?;
                for s in nodes {
                    write!(f, " ({s})")?;
                }
                write!(f, ")")
            }
            TreeTerm::Graft { handle, family } => {
                write!(f, "(graft")?;
                write_family(f, handle, family, "canonical", &|t, f| write!(f, "{t}"))?;
                write!(f, ")")
            }
            TreeTerm::Union(parts) => {
                write!(f, "(union")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom { text, .. } => write!(f, "{text}"),
            Sexp::List { items, .. } => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn write_admissible(phi: &AdmissibleMap) -> String {
    let mut out = format!("(admissible (alpha {})", ord_atom(&phi.domain));
    match &phi.rule {
        MapRule::CanonicalFromSigma(s) => {
            let _ = write!(out, " (canonical {s})");
        }
        MapRule::Tabulated {
            table,
            breadth,
            depth,
        } => {
            let _ = write!(out, " (bounds {breadth} {depth})\n  (table");
            for (k, v) in table {
                let _ = write!(out, "\n    ({k} {v})");
            }
            out.push(')');
        }
    }
    out.push_str(")\n");
    out
}

pub fn write_annotated(t: &AnnotatedTree) -> String {
    let mut out = String::from("(image");
    if let Some(d) = t.depth {
        let _ = write!(out, " (depth {d})");
    }
    out.push_str("\n  (nodes");
    for s in t.nodes() {
        let _ = write!(out, " {s}");
    }
    out.push_str(")\n  (omega");
    for s in t.omega() {
        let _ = write!(out, " {s}");
    }
    out.push_str("))\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broom::canonical_btilde;

    #[test]
    fn singletons_and_canonical_brooms() {
        assert_eq!(
            parse_term("(singleton (1 2))").unwrap(),
            Term::Broom(BroomTerm::Singleton(FinSeq::from([1, 2])))
        );
        assert_eq!(
            parse_broom("(broom (handle ()) (forks id) (bristles (const (singleton ()))))").unwrap(),
            canonical_btilde(&Ordinal::one())
        );
        assert_eq!(
            parse_broom("(broom (handle ()) (forks dup) (bristles (const (singleton ()))))"),
            Err(Error::UnknownForkRule("dup".into()))
        );
    }

    #[test]
    fn positioned_errors() {
        let e = parse_term("(broom (handle ())\n  (forks id) (bristles (konst x)))").unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                line: 2,
                column: 24,
                msg: "unknown bristle rule 'konst'".into()
            }
        );
        assert!(matches!(parse_term("(singleton (1 2)"), Err(Error::Syntax { line: 1, column: 1, .. })));
        let dup = "(broom (forks (affine 1 1)) (bristles (const (singleton ()))) (head (0 (singleton ())) (3 (singleton ()))))";
        assert_eq!(parse_term(dup), Err(Error::DuplicateFork(3)));
    }

    #[test]
    fn round_trips() {
        for text in [
            "(singleton ())",
            "(broom (handle (3)) (forks (affine 2 1)) (bristles (pi-indexed w (suffixes (0) ()))) (head (0 (singleton (5)))))",
            "(broom (handle ()) (forks id) (bristles (cycle (singleton ()) (broom (handle (1)) (forks id) (bristles (const (singleton ())))))))",
            "(broom (handle ()) (forks id) (bristles (pi-indexed \"w^(w+1)\")))",
            "(finite (()) ((1)) ((1 2)))",
            "(graft (handle (2)) (forks id) (bristles (canonical w*2 (lowered w))))",
            "(union (finite (()) ((9))) (graft (handle ()) (forks id) (bristles (const (finite (()))))))",
            "empty",
        ] {
            let t = parse_term(text).unwrap();
            let again = parse_term(&t.to_string()).unwrap();
            assert_eq!(t, again, "{text}");
        }
        assert_eq!(
            parse_term("(finite () (1) ((1 2)))").unwrap(),
            parse_term("(finite (()) ((1)) ((1 2)))").unwrap()
        );
    }

    #[test]
    fn maps_and_images() {
        let m = parse_admissible("(admissible (alpha 1) (bounds 3 1) (table (() ()) ((0) ()) ((1) (4))))").unwrap();
        assert_eq!(parse_admissible(&write_admissible(&m)).unwrap(), m);
        let c = parse_admissible("(admissible (alpha w) (canonical (1 2 | 0)))").unwrap();
        assert_eq!(parse_admissible(&write_admissible(&c)).unwrap(), c);
        let img = parse_annotated("(image (depth 3) (nodes (1 0) (2)) (omega ()))").unwrap();
        assert_eq!(img.len(), 4);
        assert_eq!(parse_annotated(&write_annotated(&img)).unwrap(), img);
    }
}
