//! Seeded property suites over the whole calculus, with optional fault
//! injection to show that a broken law is caught.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::broom::{canonical_btilde, class_of, BroomTerm};
use crate::complexity::{
    absolute_bound, class_inclusion, corollary_pair_feasible, metrizable_identity,
    talagrand_family, y_complexity, ClassName, Family,
};
use crate::error::{Error, Result};
use crate::gen::{self, Rng8};
use crate::ordinal::{pi, pi_inverse, Ordinal, Parity};
use crate::rank::{
    attempt_cover, broom_rank, derivative_power, rank_iterative, rank_union, tree_rank, widen,
    CoverOutcome, RankValue,
};
use crate::talpha::{
    block_admissible, canonical_admissible, check_admissible, contained_in, extract_btilde,
    image_tree, talpha_truncate, AdmissibleMap, Condition, MapRule,
};
use crate::term::Term;
use crate::tree::TreeTerm;
use crate::ClassTag;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteName {
    Rank,
    Broom,
    Talpha,
    Complexity,
    All,
}

impl SuiteName {
    pub fn label(self) -> &'static str {
        match self {
            SuiteName::Rank => "rank",
            SuiteName::Broom => "broom",
            SuiteName::Talpha => "talpha",
            SuiteName::Complexity => "complexity",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rank" => SuiteName::Rank,
            "broom" => SuiteName::Broom,
            "talpha" => SuiteName::Talpha,
            "complexity" => SuiteName::Complexity,
            "all" => SuiteName::All,
            _ => return Err(Error::Domain(format!("unknown suite '{s}'"))),
        })
    }
}

/// A deliberately broken law, used to check that the suites notice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fault {
    /// The union law uses the least member rank instead of the greatest.
    BreakRankUnion,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case.
    pub counterexample: Option<String>,
    /// The bound that ran out, when some case could not be decided.
    pub exhausted: Option<String>,
    pub elapsed: Duration,
}

impl PropertyResult {
    pub fn verdict(&self) -> Verdict {
        if self.failures > 0 {
            Verdict::Fail
        } else if self.exhausted.is_some() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn verdict(&self) -> Verdict {
        let vs: Vec<Verdict> = self.properties.iter().map(PropertyResult::verdict).collect();
        if vs.contains(&Verdict::Fail) {
            Verdict::Fail
        } else if vs.contains(&Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failures).sum()
    }
}

/// Collects the outcome of the cases of one property.
struct Check {
    suite: &'static str,
    name: &'static str,
    cases: usize,
    failures: usize,
    counterexample: Option<String>,
    exhausted: Option<String>,
    start: Instant,
}

impl Check {
    fn new(suite: &'static str, name: &'static str) -> Self {
        Check {
            suite,
            name,
            cases: 0,
            failures: 0,
            counterexample: None,
            exhausted: None,
            start: Instant::now(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            suite: self.suite,
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            counterexample: self.counterexample,
            exhausted: self.exhausted,
            elapsed: self.start.elapsed(),
        }
    }
}

pub fn run_suite(name: SuiteName, seed: u64, fault: Option<Fault>) -> SuiteReport {
    let mut properties = Vec::new();
    if matches!(name, SuiteName::Rank | SuiteName::All) {
        properties.extend(rank_suite(seed, fault));
    }
    if matches!(name, SuiteName::Broom | SuiteName::All) {
        properties.extend(broom_suite(seed));
    }
    if matches!(name, SuiteName::Talpha | SuiteName::All) {
        properties.extend(talpha_suite(seed));
    }
    if matches!(name, SuiteName::Complexity | SuiteName::All) {
        properties.extend(complexity_suite());
    }
    SuiteReport {
        suite: name,
        seed,
        properties,
    }
}

fn nat(n: u64) -> Ordinal {
    Ordinal::nat(n)
}

fn ord(s: &str) -> Ordinal {
    s.parse().expect("literal ordinal")
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

fn rank_suite(seed: u64, fault: Option<Fault>) -> Vec<PropertyResult> {
    vec![
        closed_form_matches_iteration(),
        transfinite_canonical_ranks(),
        union_law(seed, fault),
        widening_raises_rank(seed),
        lower_rank_never_covers(seed),
    ]
}

fn closed_form_matches_iteration() -> PropertyResult {
    let mut c = Check::new("rank", "closed_form_matches_iteration");
    for n in 0..=5u64 {
        let t = canonical_btilde(&nat(n)).to_tree();
        let closed = tree_rank(&t);
        let iter = rank_iterative(&t, n + 2);
        c.case(
            closed == RankValue::nat(n) && iter == Some(RankValue::nat(n)),
            || format!("B~{n}: closed {closed}, iterative {iter:?}"),
        );
    }
    c.finish()
}

fn transfinite_canonical_ranks() -> PropertyResult {
    let mut c = Check::new("rank", "transfinite_canonical_ranks");
    for a in ["w", "w+1", "w*2", "w^2"] {
        let alpha = ord(a);
        let t = canonical_btilde(&alpha).to_tree();
        let r = tree_rank(&t);
        let vanishes = derivative_power(&t, &alpha.succ()).is_empty();
        let survives = !derivative_power(&t, &alpha).is_empty();
        c.case(
            r == RankValue::Countable(alpha.clone()) && vanishes && survives,
            || format!("B~{alpha}: rank {r}, D^(a+1) empty {vanishes}, D^a non-empty {survives}"),
        );
    }
    c.finish()
}

/// Two or three random brooms of level at most 3.
pub fn union_members(rng: &mut Rng8) -> Vec<Term> {
    let k = rng.gen_range(2..=3);
    (0..k).map(|_| Term::Broom(gen::broom(rng, 3))).collect()
}

fn union_law(seed: u64, fault: Option<Fault>) -> PropertyResult {
    let mut c = Check::new("rank", "rank_of_union_is_max");
    let mut rng = gen::rng(seed);
    for _ in 0..200 {
        let terms = union_members(&mut rng);
        let members: Vec<RankValue> = terms.iter().map(crate::rank::rank).collect();
        let law = match fault {
            Some(Fault::BreakRankUnion) => members.iter().min(),
            None => members.iter().max(),
        }
        .cloned()
        .expect("non-empty");
        let union = TreeTerm::union(terms.iter().map(Term::to_tree).collect());
        let fuel = law.ordinal().and_then(Ordinal::as_nat).unwrap_or(0) + 6;
        let iterative = rank_iterative(&union, fuel);
        let reported = rank_union(&terms).map(|r| r.rank);
        let ok = iterative.as_ref() == Some(&law) && reported.as_ref().ok() == Some(&law);
        c.case(ok, || {
            let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
            format!(
                "members [{}] with ranks [{}]: law gives {law}, union iterates to {}",
                shown.join(", "),
                members.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "),
                iterative.map_or("nothing".into(), |r| r.to_string())
            )
        });
    }
    c.finish()
}

/// Finite-rank brooms: canonical ones and some random ones.
pub fn widening_fixtures(seed: u64) -> Vec<BroomTerm> {
    let mut out: Vec<BroomTerm> = (0..=4).map(|n| canonical_btilde(&nat(n))).collect();
    let mut rng = gen::rng(seed ^ 0x51de);
    out.extend((0..20).map(|_| gen::broom(&mut rng, 3)));
    out
}

fn widening_raises_rank(seed: u64) -> PropertyResult {
    let mut c = Check::new("rank", "widening_raises_rank");
    for b in widening_fixtures(seed) {
        let before = broom_rank(&b);
        let after = widen(&b).map(|w| broom_rank(&w));
        c.case(after.as_ref().is_ok_and(|a| *a >= before.succ()), || {
            format!("{b}: rank {before}, widened {after:?}")
        });
    }
    c.finish()
}

/// Five random cover lists of class strictly below `alpha`.
pub fn lower_covers(alpha: &Ordinal, seed: u64) -> Vec<Vec<BroomTerm>> {
    let cap = alpha.as_nat().map_or(3, |n| n - 1);
    let mut rng = gen::rng(seed ^ 0xc0fe);
    (0..5)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            (0..k).map(|_| gen::broom(&mut rng, cap)).collect()
        })
        .collect()
}

fn lower_rank_never_covers(seed: u64) -> PropertyResult {
    let mut c = Check::new("rank", "no_cover_from_lower_rank");
    for a in ["1", "2", "3", "w"] {
        let alpha = ord(a);
        let target = canonical_btilde(&alpha);
        for covers in lower_covers(&alpha, seed) {
            let v = attempt_cover(&target, &covers, 3);
            c.case(v.outcome == CoverOutcome::RankGap && !v.coverable(), || {
                format!(
                    "B~{alpha} against covers of ranks {:?}: {:?}",
                    v.cover_ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    v.outcome
                )
            });
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// broom
// ---------------------------------------------------------------------------

fn broom_suite(seed: u64) -> Vec<PropertyResult> {
    vec![d_membership(seed), extension_prefix_invariance(seed)]
}

fn d_membership(seed: u64) -> PropertyResult {
    let mut c = Check::new("broom", "d_membership");
    let mut rng = gen::rng(seed ^ 0xd);
    for a in 1..=3u64 {
        let b = canonical_btilde(&nat(a));
        let probes: Vec<_> = (0..20).map(|_| gen::eventually_constant(&mut rng, 6)).collect();
        let report = b.check_d(10, 12, &probes);
        c.case(report.passed(), || {
            let bad = report.probes.iter().find(|p| p.m.is_none());
            format!("B~{a}: antichain {:?}, probe without witness {:?}", report.antichain_violation, bad.map(|p| p.probe.to_string()))
        });
    }
    c.finish()
}

fn extension_prefix_invariance(seed: u64) -> PropertyResult {
    let mut c = Check::new("broom", "extension_prefix_invariance");
    let mut rng = gen::rng(seed ^ 0xe);
    for _ in 0..100 {
        let b = gen::broom(&mut rng, 3);
        let rule = gen::suffix_rule(&mut rng);
        let handle = gen::fin_seq(&mut rng, 3, 4);
        let moved = b.extend_finitely(&rule).prefix(&handle);
        let (c0, c1) = (class_of(&b), class_of(&moved));
        let (r0, r1) = (broom_rank(&b), broom_rank(&moved));
        let ok = c0.is_ok() && c0.as_ref().ok() == c1.as_ref().ok() && r0 == r1;
        c.case(ok, || format!("{b} under {rule:?} and handle {handle}: {c0:?}/{c1:?}, {r0}/{r1}"));
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// talpha
// ---------------------------------------------------------------------------

fn talpha_suite(seed: u64) -> Vec<PropertyResult> {
    vec![
        canonical_admissible_passes(seed),
        mutated_tables_fail(seed),
        extraction_round_trip(),
        pi_soundness(),
    ]
}

pub const ADMISSIBLE_LEVELS: [&str; 5] = ["1", "2", "3", "w", "w*2"];

fn canonical_admissible_passes(seed: u64) -> PropertyResult {
    let mut c = Check::new("talpha", "canonical_admissible_passes");
    let mut rng = gen::rng(seed ^ 0xa);
    for _ in 0..50 {
        let sigma = gen::inf_seq(&mut rng, 5);
        let alpha = ord(ADMISSIBLE_LEVELS[rng.gen_range(0..ADMISSIBLE_LEVELS.len())]);
        let depth = rng.gen_range(0..=6);
        let phi = canonical_admissible(&sigma, &alpha);
        let report = check_admissible(&phi, 3, depth);
        c.case(report.as_ref().is_ok_and(|r| r.passed()), || {
            format!("sigma {sigma}, alpha {alpha}, depth {depth}: {report:?}")
        });
    }
    c.finish()
}

/// A tabulated canonical map with one entry broken, with the condition
/// and node where the check must stop.
#[derive(Clone, Debug)]
pub struct Mutant {
    pub map: AdmissibleMap,
    pub breadth: usize,
    pub depth: usize,
    pub condition: Condition,
    pub node: crate::seq::FinSeq,
}

/// Ten mutants alternating between the two conditions.
pub fn mutants(seed: u64) -> Vec<Mutant> {
    let mut rng = gen::rng(seed ^ 0x4d);
    let (breadth, depth) = (3, 3);
    let mut out = Vec::new();
    while out.len() < 10 {
        let alpha = ord(ADMISSIBLE_LEVELS[rng.gen_range(0..ADMISSIBLE_LEVELS.len())]);
        let sigma = gen::inf_seq(&mut rng, 5);
        let base = canonical_admissible(&sigma, &alpha)
            .tabulate(breadth, depth)
            .expect("canonical maps are total");
        let MapRule::Tabulated { mut table, .. } = base.rule else {
            unreachable!("tabulate returns a table")
        };
        let want_length = out.len() % 2 == 0;
        // Nodes whose parent image is non-empty, so that changing the first
        // entry breaks monotonicity at the node itself.
        let candidates: Vec<_> = talpha_truncate(&alpha, breadth, depth)
            .nodes()
            .iter()
            .filter(|t| t.parent().is_some_and(|p| p.entry_sum() > 0))
            .cloned()
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let node = candidates[rng.gen_range(0..candidates.len())].clone();
        let image = table[&node].clone();
        let broken = if want_length {
            let mut v = image.entries().to_vec();
            v.push(rng.gen_range(0..5));
            v
        } else {
            let mut v = image.entries().to_vec();
            v[0] += 1;
            v
        };
        table.insert(node.clone(), crate::seq::FinSeq::new(broken));
        out.push(Mutant {
            map: AdmissibleMap {
                domain: alpha,
                rule: MapRule::Tabulated {
                    table,
                    breadth,
                    depth,
                },
            },
            breadth,
            depth,
            condition: if want_length {
                Condition::Length
            } else {
                Condition::Monotone
            },
            node,
        });
    }
    out
}

fn mutated_tables_fail(seed: u64) -> PropertyResult {
    let mut c = Check::new("talpha", "mutated_tables_fail");
    for m in mutants(seed) {
        let report = check_admissible(&m.map, m.breadth, m.depth);
        let got = report
            .as_ref()
            .ok()
            .and_then(|r| r.violation.as_ref())
            .map(|v| (v.condition, v.node.clone()));
        c.case(got == Some((m.condition, m.node.clone())), || {
            format!(
                "mutant at {} expected condition {}, got {got:?}",
                m.node, m.condition as u8
            )
        });
    }
    c.finish()
}

fn extraction_round_trip() -> PropertyResult {
    let mut c = Check::new("talpha", "extraction_round_trip");
    for a in 1..=3u64 {
        let alpha = nat(a);
        let (breadth, depth) = (4, a as usize);
        let phi = block_admissible(&alpha, breadth, depth);
        let found = image_tree(&phi, breadth, depth)
            .and_then(|img| Ok((extract_btilde(&img, &alpha, 3)?, img)));
        let ok = match &found {
            Ok((Some(b), img)) => {
                class_of(b).ok() == Some(ClassTag::btilde(alpha.clone())) && contained_in(b, img, 3)
            }
            _ => false,
        };
        c.case(ok, || format!("alpha {a}: {:?}", found.map(|(b, _)| b)));
    }
    c.finish()
}

pub const PI_LEVELS: [&str; 5] = ["5", "w", "w+3", "w*2", "w^2"];

fn pi_soundness() -> PropertyResult {
    let mut c = Check::new("talpha", "pi_soundness");
    for a in PI_LEVELS {
        let alpha = ord(a);
        let values: Vec<Result<Ordinal>> = (0..200).map(|n| pi(&alpha, n)).collect();
        let below = values.iter().all(|v| v.as_ref().is_ok_and(|b| *b < alpha));
        let ok = below
            && if alpha.is_limit() {
                let distinct: std::collections::BTreeSet<_> =
                    values.iter().map(|v| v.as_ref().unwrap()).collect();
                distinct.len() == 200
                    && values.iter().enumerate().all(|(n, v)| {
                        pi_inverse(&alpha, v.as_ref().unwrap()).ok() == Some(n as u64)
                    })
            } else {
                true
            };
        c.case(ok, || format!("pi at {alpha} fails on the first 200 indices"));
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// complexity
// ---------------------------------------------------------------------------

fn complexity_suite() -> Vec<PropertyResult> {
    vec![
        composition_law(),
        y_odd_levels(),
        inclusion_agrees_with_metrizable(),
        pair_monotonicity(),
    ]
}

/// Ordinals of the form `w*a + n` with small `a` and `n`.
fn small_ordinals() -> Vec<Ordinal> {
    let mut out = Vec::new();
    for a in 0..3u64 {
        for n in 0..12u64 {
            let base = if a == 0 {
                Ordinal::zero()
            } else {
                Ordinal::omega_pow_times(nat(1), a)
            };
            out.push(base.add(&nat(n)));
        }
    }
    out.push(ord("w^2"));
    out.push(ord("w^2+w+5"));
    out
}

fn composition_law() -> PropertyResult {
    let mut c = Check::new("complexity", "composition_law");
    for alpha in small_ordinals() {
        if alpha.parity() != Parity::Even || alpha < nat(4) {
            continue;
        }
        let got = talagrand_family(&alpha).and_then(|e| absolute_bound(&e));
        c.case(got.as_ref().ok() == Some(&ClassName::f(alpha.succ())), || {
            format!("alpha {alpha}: {got:?}")
        });
    }
    c.finish()
}

fn y_odd_levels() -> PropertyResult {
    let mut c = Check::new("complexity", "y_odd_levels");
    let table = [("1", "F3"), ("2", "F5"), ("3", "F7"), ("w", "Fw+1"), ("w+1", "Fw+3")];
    for (a, want) in table {
        let got = y_complexity(&ord(a)).to_string();
        c.case(got == want, || format!("y at {a}: {got}, expected {want}"));
    }
    for alpha in small_ordinals().into_iter().filter(|a| !a.is_zero()) {
        let y = y_complexity(&alpha);
        let ok = y.family() == Family::F && y.level().parity() == Parity::Odd && *y.level() > alpha;
        c.case(ok, || format!("y at {alpha} is {y}"));
    }
    c.finish()
}

fn inclusion_agrees_with_metrizable() -> PropertyResult {
    let mut c = Check::new("complexity", "inclusion_agrees_with_metrizable");
    for level in small_ordinals().into_iter().filter(|a| !a.is_zero()) {
        for family in [Family::F, Family::G] {
            let class = ClassName::new(family, level.clone()).expect("level >= 1");
            let inc = class_inclusion(&class);
            let met = metrizable_identity(&class);
            let ok = match (&inc, &met) {
                (Ok(i), Ok(m)) => {
                    i.len() == 1
                        && m.len() == 2
                        && i[0] == m[1]
                        && metrizable_identity(&m[0]).ok().is_some_and(|back| back[0] == class)
                }
                _ => false,
            };
            c.case(ok, || format!("{class}: inclusion {inc:?}, metrizable {met:?}"));
        }
    }
    c.finish()
}

fn pair_monotonicity() -> PropertyResult {
    let mut c = Check::new("complexity", "pair_monotonicity");
    let levels = small_ordinals();
    for alpha in &levels {
        for beta in &levels {
            if !corollary_pair_feasible(alpha, beta) {
                continue;
            }
            let up = corollary_pair_feasible(&alpha.add(&nat(2)), beta);
            let between = levels
                .iter()
                .filter(|g| *g >= beta && *g <= alpha)
                .all(|g| corollary_pair_feasible(alpha, g));
            c.case(up && between, || format!("pair ({alpha}, {beta})"));
        }
    }
    c.finish()
}
