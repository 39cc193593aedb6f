//! Independent reference implementations checked against the library.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use broomcalc::gen;
use broomcalc::rank::{rank, rank_iterative};
use broomcalc::tree::cl_tr;
use broomcalc::{pi, FinSeq, InfSeq, Ordinal, RankValue, Term, TreeTerm};

// ---------------------------------------------------------------------------
// Ordinal addition below ω², as the order type of a concatenation.
// ---------------------------------------------------------------------------

/// A well-order below ω² written as a run of pieces, each either a copy of
/// ω or a single point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Piece {
    Omega,
    Point,
}

fn pieces(a: u64, b: u64) -> Vec<Piece> {
    let mut v = vec![Piece::Omega; a as usize];
    v.extend(std::iter::repeat(Piece::Point).take(b as usize));
    v
}

/// Order type of a run: points directly before a copy of ω are absorbed
/// into it, so only the points after the last ω stay visible.
fn order_type(run: &[Piece]) -> (u64, u64) {
    let omegas = run.iter().filter(|p| **p == Piece::Omega).count() as u64;
    let trailing = run.iter().rev().take_while(|p| **p == Piece::Point).count() as u64;
    (omegas, trailing)
}

fn below_omega_squared(a: u64, b: u64) -> Ordinal {
    Ordinal::from_terms([(Ordinal::one(), a), (Ordinal::zero(), b)])
}

#[test]
fn addition_is_concatenation_below_omega_squared() {
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    let mut run = pieces(a, b);
                    run.extend(pieces(c, d));
                    let (x, y) = order_type(&run);
                    let sum = below_omega_squared(a, b).add(&below_omega_squared(c, d));
                    assert_eq!(sum, below_omega_squared(x, y), "w*{a}+{b} + w*{c}+{d}");
                }
            }
        }
    }
}

#[test]
fn comparison_matches_lexicographic_pairs() {
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                for d in 0..6 {
                    let lhs = below_omega_squared(a, b).cmp(&below_omega_squared(c, d));
                    assert_eq!(lhs, (a, b).cmp(&(c, d)));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration below a limit, by brute force over bounded normal forms.
// ---------------------------------------------------------------------------

/// Ordinal written as a descending list of (exponent, coefficient) with
/// natural exponents, below ω^ω.
fn brute_size(terms: &[(u64, u64)]) -> u64 {
    terms.iter().map(|(e, c)| c + e).sum()
}

/// Every ordinal below ω³ with coefficients up to `cmax`, tagged by size.
fn brute_candidates(cmax: u64) -> Vec<(u64, Ordinal)> {
    let mut out = Vec::new();
    for c2 in 0..=cmax {
        for c1 in 0..=cmax {
            for c0 in 0..=cmax {
                let terms: Vec<(u64, u64)> = [(2, c2), (1, c1), (0, c0)]
                    .into_iter()
                    .filter(|(_, c)| *c > 0)
                    .collect();
                let o = Ordinal::from_terms(terms.iter().map(|&(e, c)| (Ordinal::nat(e), c)));
                out.push((brute_size(&terms), o));
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let cmax = 40;
    let all = brute_candidates(cmax);
    for a in ["w", "w*2", "w*3+w", "w^2", "w^2*2"] {
        let alpha: Ordinal = a.parse().unwrap();
        let mut below: Vec<(u64, Ordinal)> =
            all.iter().filter(|(_, o)| *o < alpha).cloned().collect();
        below.sort();
        // Grades up to `cmax` are complete in the candidate list.
        let complete: Vec<Ordinal> = below
            .into_iter()
            .filter(|(g, _)| *g <= cmax)
            .map(|(_, o)| o)
            .collect();
        let n = complete.len().min(300);
        for (i, want) in complete.iter().take(n).enumerate() {
            assert_eq!(&pi(&alpha, i as u64).unwrap(), want, "pi({a}, {i})");
        }
    }
}

// ---------------------------------------------------------------------------
// Rank from a finite truncation.
// ---------------------------------------------------------------------------

/// Iterates a finite stand-in for the derivative: a node survives when some
/// node at or below it has at least `q` children in the current set.
fn approximate_rank(nodes: &BTreeSet<FinSeq>, q: usize) -> RankValue {
    let mut cur: BTreeSet<FinSeq> = nodes.clone();
    if cur.is_empty() {
        return RankValue::Empty;
    }
    let mut k = 0;
    loop {
        let mut kids: BTreeMap<FinSeq, usize> = BTreeMap::new();
        for s in &cur {
            if let Some(p) = s.parent() {
                *kids.entry(p).or_default() += 1;
            }
        }
        let mut next = BTreeSet::new();
        for (t, n) in kids {
            if n >= q {
                for p in t.prefixes() {
                    next.insert(p);
                }
            }
        }
        if next.is_empty() {
            return RankValue::nat(k);
        }
        cur = next;
        k += 1;
    }
}

#[test]
fn truncated_rank_agrees_with_closed_form() {
    let mut rng = gen::rng(11);
    for case in 0..40 {
        let k = rng.gen_range(1..=2);
        let terms: Vec<Term> = (0..k).map(|_| Term::Broom(gen::broom(&mut rng, 3))).collect();
        let tree = TreeTerm::union(terms.iter().map(Term::to_tree).collect());
        let want = terms.iter().map(rank).max().unwrap();
        // Heads hold at most two items and tails repeat with period at most
        // six, so 26 materialised items give at least 4 live tail items
        // whenever the tail survives.
        let truncated = tree.truncate(26, 60);
        let got = approximate_rank(truncated.nodes(), 4);
        assert_eq!(got, want, "case {case}: {tree}");
    }
}

#[test]
fn iteration_agrees_with_truncation_on_canonical_brooms() {
    for n in 0..=3u64 {
        let t = broomcalc::canonical_btilde(&Ordinal::nat(n)).to_tree();
        let approx = approximate_rank(t.truncate(5, 20).nodes(), 5);
        assert_eq!(Some(approx), rank_iterative(&t, 10));
    }
}

// ---------------------------------------------------------------------------
// D-membership by exhaustive pairwise checks.
// ---------------------------------------------------------------------------

fn is_prefix(s: &[u64], t: &[u64]) -> bool {
    s.len() <= t.len() && s.iter().zip(t).all(|(a, b)| a == b)
}

fn brute_witness(elems: &[FinSeq], sigma: &InfSeq, depth: usize) -> Option<usize> {
    (0..=depth).find(|&m| {
        let p: Vec<u64> = (0..m).map(|i| sigma.get(i)).collect();
        let hits = elems
            .iter()
            .filter(|s| is_prefix(s.entries(), &p) || is_prefix(&p, s.entries()))
            .count();
        hits <= 1
    })
}

#[test]
fn check_d_matches_exhaustive_search() {
    let mut rng = gen::rng(12);
    for case in 0..30 {
        let b = gen::broom(&mut rng, 2);
        let (breadth, depth) = (4, 10);
        let elems = b.elements(breadth, depth);
        let probes: Vec<InfSeq> = (0..8).map(|_| gen::eventually_constant(&mut rng, 4)).collect();
        let report = b.check_d(breadth, depth, &probes);

        let mut antichain = true;
        for (i, s) in elems.iter().enumerate() {
            for (j, t) in elems.iter().enumerate() {
                if i != j && is_prefix(s.entries(), t.entries()) {
                    antichain = false;
                }
            }
        }
        assert_eq!(report.antichain_violation.is_none(), antichain, "case {case}: {b}");
        for w in &report.probes {
            assert_eq!(w.m, brute_witness(&elems, &w.probe, depth), "case {case}: {b}");
        }
    }
}

#[test]
fn prefix_closure_matches_definition() {
    let mut rng = gen::rng(13);
    for _ in 0..50 {
        let set: Vec<FinSeq> = (0..rng.gen_range(0..6)).map(|_| gen::fin_seq(&mut rng, 4, 3)).collect();
        let closed = cl_tr(&set);
        let mut want = BTreeSet::new();
        for s in &set {
            for n in 0..=s.len() {
                want.insert(FinSeq::new(s.entries()[..n].to_vec()));
            }
        }
        assert_eq!(closed, want);
    }
}
