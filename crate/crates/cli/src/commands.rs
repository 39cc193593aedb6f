use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use broomcalc::complexity::{
    absolute_bound, class_inclusion, corollary_pair_feasible, main_theorem_profile,
    metrizable_identity, talagrand_family, y_complexity, FamilyClassDescriptor,
};
use broomcalc::dot::to_dot;
use broomcalc::rank::{attempt_cover, broom_rank, rank, rank_iterative, rank_union, widen, CoverOutcome, COVER_BUDGET};
use broomcalc::sexp::{parse_admissible, parse_annotated, parse_broom, parse_term, write_annotated};
use broomcalc::suite::{run_suite, Fault, SuiteName};
use broomcalc::talpha::{check_admissible, extract_btilde, image_tree, talpha_truncate};
use broomcalc::{gen, AnnotatedTree, BroomTerm, Error, InfSeq, Result, Term};

use crate::report::{Report, Verdict};
use crate::{
    AdmissibleCmd, BroomCmd, Cli, Command, ComplexityCmd, CoverArgs, ExtractArgs, OrdinalCmd,
    RankArgs, RankMethod, RankSub, SuiteArgs, SuiteChoice, TalphaCmd,
};

pub fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Ordinal(c) => ordinal(c),
        Command::Broom(c) => broom(c, cli.seed),
        Command::Rank(a) => rank_cmd(a),
        Command::Cover(a) => cover(a),
        Command::Talpha(c) => talpha(c),
        Command::Admissible(c) => admissible(c),
        Command::Extract(a) => extract(a),
        Command::Complexity(c) => complexity(c),
        Command::Suite(a) => suite(a, cli.seed),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_term(path: &Path) -> Result<Term> {
    parse_term(&read(path)?)
}

fn load_broom(path: &Path) -> Result<BroomTerm> {
    parse_broom(&read(path)?)
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

// ---------------------------------------------------------------------------

fn ordinal(c: &OrdinalCmd) -> Result<Report> {
    Ok(match c {
        OrdinalCmd::Show { a } => Report::single(a.to_string(), json!({ "ordinal": a.to_string() })),
        OrdinalCmd::Add { a, b } => {
            let s = a
                .checked_add(b)
                .ok_or_else(|| Error::Domain(format!("{a} + {b} overflows a coefficient")))?;
            Report::single(s.to_string(), json!({ "sum": s.to_string() }))
        }
        OrdinalCmd::Sub { a, b } => {
            let d = b
                .checked_sub_left(a)
                .ok_or_else(|| Error::Domain(format!("{a} is larger than {b}")))?;
            Report::single(d.to_string(), json!({ "difference": d.to_string() }))
        }
        OrdinalCmd::Cmp { a, b } => {
            let (sym, word) = match a.cmp(b) {
                Ordering::Less => ("<", "less"),
                Ordering::Equal => ("=", "equal"),
                Ordering::Greater => (">", "greater"),
            };
            Report::single(format!("{a} {sym} {b}"), json!({ "order": word }))
        }
        OrdinalCmd::Split { a } => {
            let s = a.split_limit_finite();
            let parity = match a.parity() {
                broomcalc::Parity::Even => "even",
                broomcalc::Parity::Odd => "odd",
            };
            Report::single(
                format!("limit {} finite {} {parity}", s.limit_part, s.finite_part),
                json!({ "limit": s.limit_part.to_string(), "finite": s.finite_part, "parity": parity }),
            )
        }
        OrdinalCmd::Pi { alpha, count } => {
            let mut r = Report::new(Verdict::Pass);
            for n in 0..*count {
                let v = broomcalc::pi(alpha, n)?;
                r = r
                    .line(format!("{n} {v}"))
                    .record(json!({ "n": n, "value": v.to_string() }));
            }
            r
        }
        OrdinalCmd::PiInverse { alpha, beta } => {
            let n = broomcalc::pi_inverse(alpha, beta)?;
            Report::single(n.to_string(), json!({ "index": n }))
        }
    })
}

// ---------------------------------------------------------------------------

fn broom(c: &BroomCmd, seed: u64) -> Result<Report> {
    Ok(match c {
        BroomCmd::Build { level } => {
            let b = broomcalc::canonical_btilde(level);
            Report::single(b.to_string(), json!({ "term": b.to_string(), "class": b.classify()?.to_string() }))
        }
        BroomCmd::Class { term } => {
            let tag = load_broom(term)?.classify()?;
            Report::single(
                tag.to_string(),
                json!({ "kind": tag.kind.to_string(), "level": tag.level.to_string() }),
            )
        }
        BroomCmd::CheckD {
            term,
            breadth,
            depth,
            probes,
            explicit,
        } => {
            let b = load_broom(term)?;
            let mut rng = gen::rng(seed);
            let mut all: Vec<InfSeq> = (0..*probes).map(|_| gen::eventually_constant(&mut rng, 6)).collect();
            all.extend(explicit.iter().cloned());
            check_d(&b, *breadth, *depth, &all)
        }
        BroomCmd::Elements { term, breadth, depth } => {
            let elems = load_broom(term)?.elements(*breadth, *depth);
            let mut r = Report::new(Verdict::Pass);
            for s in elems {
                r = r.line(s.to_string()).record(json!({ "element": s.to_string() }));
            }
            r
        }
        BroomCmd::Sample { term, breadth } => {
            let mut r = Report::new(Verdict::Pass);
            for x in load_broom(term)?.sample_infinite_extension(*breadth) {
                r = r.line(x.to_string()).record(json!({ "point": x.to_string() }));
            }
            r
        }
        BroomCmd::Widen { term } => {
            let b = load_broom(term)?;
            let w = widen(&b)?;
            let (r0, r1) = (broom_rank(&b), broom_rank(&w));
            Report::new(Verdict::Pass)
                .line(w.to_string())
                .line(format!("rank {r0} -> {r1}"))
                .record(json!({ "term": w.to_string(), "rank_before": r0.to_string(), "rank_after": r1.to_string() }))
        }
    })
}

fn check_d(b: &BroomTerm, breadth: usize, depth: usize, probes: &[InfSeq]) -> Report {
    let d = b.check_d(breadth, depth, probes);
    let mut r = Report::new(if d.passed() { Verdict::Pass } else { Verdict::Fail });
    for w in &d.probes {
        let m = w.m.map_or("none".to_string(), |m| m.to_string());
        r = r
            .line(format!("probe {} m {m}", w.probe))
            .record(json!({ "probe": w.probe.to_string(), "m": w.m }));
    }
    if let Some((s, t)) = &d.antichain_violation {
        r = r.line(format!("fail: {s} is a prefix of {t}"));
    } else if let Some(w) = d.probes.iter().find(|w| w.m.is_none()) {
        r = r.line(format!("fail: probe {} meets two elements at every depth up to {depth}", w.probe));
    } else {
        r = r.line(format!(
            "pass: {} elements, {} probes witnessed (breadth {breadth}, depth {depth})",
            d.elements,
            d.probes.len()
        ));
    }
    r.record(json!({
        "verdict": if d.passed() { "pass" } else { "fail" },
        "elements": d.elements,
        "breadth": breadth,
        "depth": depth,
        "antichain_violation": d.antichain_violation.as_ref().map(|(s, t)| vec![s.to_string(), t.to_string()]),
    }))
}

// ---------------------------------------------------------------------------

fn rank_cmd(a: &RankArgs) -> Result<Report> {
    if let Some(RankSub::Union { terms }) = &a.union {
        let ts = terms.iter().map(|p| load_term(p)).collect::<Result<Vec<_>>>()?;
        return match rank_union(&ts) {
            Ok(u) => Ok(Report::single(
                format!("rank {} (members {})", u.rank, strings(&u.members).join(" ")),
                json!({
                    "rank": u.rank.to_string(),
                    "members": strings(&u.members),
                    "iterative": u.iterative.map(|r| r.to_string()),
                }),
            )),
            Err(Error::Inconsistent(msg)) => Ok(Report::new(Verdict::Fail)
                .line(format!("fail: {msg}"))
                .record(json!({ "verdict": "fail", "counterexample": msg }))),
            Err(e) => Err(e),
        };
    }
    let path = a
        .term
        .as_ref()
        .ok_or_else(|| Error::Domain("rank needs --term FILE or the union subcommand".into()))?;
    let t = load_term(path)?;
    Ok(match a.method {
        RankMethod::Closed => {
            let r = rank(&t);
            Report::single(r.to_string(), json!({ "rank": r.to_string(), "method": "closed" }))
        }
        RankMethod::Iterative => match rank_iterative(&t.to_tree(), a.fuel) {
            Some(r) => Report::single(r.to_string(), json!({ "rank": r.to_string(), "method": "iterative" })),
            None => Report::new(Verdict::Inconclusive)
                .line(format!("inconclusive: no empty derivative within {} steps", a.fuel))
                .record(json!({ "verdict": "inconclusive", "method": "iterative", "fuel": a.fuel })),
        },
    })
}

fn cover(a: &CoverArgs) -> Result<Report> {
    let target = load_broom(&a.target)?;
    let covers = a.covers.iter().map(|p| load_broom(p)).collect::<Result<Vec<_>>>()?;
    let v = attempt_cover(&target, &covers, a.breadth);
    let ranks = strings(&v.cover_ranks);
    let (verdict, word, text) = match &v.outcome {
        CoverOutcome::RankGap => (
            Verdict::Pass,
            "rank-gap",
            format!(
                "not coverable: target rank {} exceeds cover ranks {}",
                v.target_rank,
                ranks.join(" ")
            ),
        ),
        CoverOutcome::Uncovered(t) => (
            Verdict::Pass,
            "uncovered",
            format!("not coverable: {t} lies on no cover"),
        ),
        CoverOutcome::Coverable => (
            Verdict::Pass,
            "coverable",
            format!("coverable on the truncation: {} elements checked", v.examined),
        ),
        CoverOutcome::Inconclusive => (
            Verdict::Inconclusive,
            "inconclusive",
            format!("inconclusive: budget of {COVER_BUDGET} elements exhausted"),
        ),
    };
    let uncovered = match &v.outcome {
        CoverOutcome::Uncovered(t) => Some(t.to_string()),
        _ => None,
    };
    Ok(Report::new(verdict).line(text).record(json!({
        "verdict": verdict.label(),
        "outcome": word,
        "target_rank": v.target_rank.to_string(),
        "cover_ranks": ranks,
        "uncovered": uncovered,
        "examined": v.examined,
    })))
}

// ---------------------------------------------------------------------------

fn tree_report(t: &AnnotatedTree, dot: Option<&Path>) -> Result<Report> {
    let mut r = Report::new(Verdict::Pass);
    if let Some(path) = dot {
        write(path, &to_dot(t))?;
        return Ok(r
            .line(format!("wrote {} nodes to {}", t.len(), path.display()))
            .record(json!({ "nodes": t.len(), "path": path.display().to_string() })));
    }
    for s in t.nodes() {
        let mark = if t.is_marked(s) { " *" } else { "" };
        r = r.line(format!("{s}{mark}"));
    }
    Ok(r.record(json!({
        "nodes": strings(t.nodes()),
        "omega": strings(t.omega()),
    })))
}

fn talpha(c: &TalphaCmd) -> Result<Report> {
    match c {
        TalphaCmd::Enum {
            alpha,
            breadth,
            depth,
            dot,
        } => tree_report(&talpha_truncate(alpha, *breadth, *depth), dot.as_deref()),
    }
}

fn admissible(c: &AdmissibleCmd) -> Result<Report> {
    match c {
        AdmissibleCmd::Check { map, breadth, depth } => {
            let phi = parse_admissible(&read(map)?)?;
            let rep = check_admissible(&phi, *breadth, *depth)?;
            Ok(match rep.violation {
                None => Report::new(Verdict::Pass)
                    .line(format!("pass: {} nodes checked", rep.checked))
                    .record(json!({ "verdict": "pass", "checked": rep.checked })),
                Some(v) => {
                    let cond = v.condition as u8;
                    Report::new(Verdict::Fail)
                        .line(format!("fail: condition {cond} at {}: {}", v.node, v.detail))
                        .record(json!({
                            "verdict": "fail",
                            "checked": rep.checked,
                            "condition": cond,
                            "node": v.node.to_string(),
                            "image": v.image.to_string(),
                        }))
                }
            })
        }
        AdmissibleCmd::Image {
            map,
            breadth,
            depth,
            dot,
        } => {
            let phi = parse_admissible(&read(map)?)?;
            let img = image_tree(&phi, *breadth, *depth)?;
            if dot.is_some() {
                return tree_report(&img, dot.as_deref());
            }
            let text = write_annotated(&img).trim_end().to_string();
            Ok(Report::single(text.clone(), json!({ "image": text })))
        }
    }
}

fn extract(a: &ExtractArgs) -> Result<Report> {
    let img = parse_annotated(&read(&a.image)?)?;
    Ok(match extract_btilde(&img, &a.alpha, a.threshold) {
        Ok(Some(b)) => {
            let tag = b.classify()?;
            Report::new(Verdict::Pass)
                .line(b.to_string())
                .line(format!("class {tag}"))
                .record(json!({ "verdict": "pass", "term": b.to_string(), "class": tag.to_string() }))
        }
        Ok(None) => Report::new(Verdict::Inconclusive)
            .line(format!(
                "inconclusive: no canonical broom of level {} with threshold {}",
                a.alpha, a.threshold
            ))
            .record(json!({ "verdict": "inconclusive", "threshold": a.threshold })),
        Err(Error::NotWellFounded(s)) => Report::new(Verdict::Fail)
            .line(format!("fail: {s} has no infinitely branching prefix"))
            .record(json!({ "verdict": "fail", "node": s.to_string() })),
        Err(e) => return Err(e),
    })
}

// ---------------------------------------------------------------------------

fn class_list(cs: &[broomcalc::complexity::ClassName]) -> Value {
    Value::from(strings(cs))
}

fn complexity(c: &ComplexityCmd) -> Result<Report> {
    Ok(match c {
        ComplexityCmd::Y { alpha } => {
            let y = y_complexity(alpha);
            Report::single(y.to_string(), json!({ "class": y.to_string() }))
        }
        ComplexityCmd::Absolute { family } => {
            let f: FamilyClassDescriptor = family.parse()?;
            let c = absolute_bound(&f)?;
            Report::single(c.to_string(), json!({ "family": f.to_string(), "class": c.to_string() }))
        }
        ComplexityCmd::Talagrand { alpha } => {
            let f = talagrand_family(alpha)?;
            Report::single(f.to_string(), json!({ "family": f.to_string() }))
        }
        ComplexityCmd::Correspond { class, metrizable } => {
            let cs = if *metrizable {
                metrizable_identity(class)?
            } else {
                class_inclusion(class)?
            };
            let rel = if *metrizable { "=" } else { "<=" };
            Report::single(
                format!("{class} {rel} {}", strings(&cs).join(" = ")),
                json!({ "class": class.to_string(), "metrizable": metrizable, "classes": class_list(&cs) }),
            )
        }
        ComplexityCmd::Pair { alpha, beta } => {
            let ok = corollary_pair_feasible(alpha, beta);
            Report::single(
                format!("({alpha}, {beta}) {}", if ok { "feasible" } else { "not feasible" }),
                json!({ "alpha": alpha.to_string(), "beta": beta.to_string(), "feasible": ok }),
            )
        }
        ComplexityCmd::Theorem { alpha } => {
            let p = main_theorem_profile(alpha)?;
            Report::new(Verdict::Pass)
                .line(format!("complexity {}", p.complexity))
                .line(format!("not absolute {}", p.not_absolute))
                .line(format!("absolute {}", p.absolute))
                .record(json!({
                    "alpha": alpha.to_string(),
                    "complexity": p.complexity.to_string(),
                    "not_absolute": p.not_absolute.to_string(),
                    "absolute": p.absolute.to_string(),
                }))
        }
    })
}

// ---------------------------------------------------------------------------

fn suite(a: &SuiteArgs, seed: u64) -> Result<Report> {
    let name = match a.name {
        SuiteChoice::Rank => SuiteName::Rank,
        SuiteChoice::Broom => SuiteName::Broom,
        SuiteChoice::Talpha => SuiteName::Talpha,
        SuiteChoice::Complexity => SuiteName::Complexity,
        SuiteChoice::All => SuiteName::All,
    };
    let fault = a.break_rank_union.then_some(Fault::BreakRankUnion);
    let rep = run_suite(name, seed, fault);
    let verdict = Verdict::from(rep.verdict());
    let mut r = Report::new(verdict);
    let mut props = rep.properties.clone();
    props.sort_by(|x, y| (x.suite, x.name).cmp(&(y.suite, y.name)));
    for p in &props {
        let v = Verdict::from(p.verdict());
        r = r.line(format!(
            "{} {}/{} ({} cases, {} failures)",
            v.label(),
            p.suite,
            p.name,
            p.cases,
            p.failures
        ));
        if let Some(ce) = &p.counterexample {
            r = r.line(format!("  counterexample: {ce}"));
        }
        r = r.record(json!({
            "suite": p.suite,
            "property": p.name,
            "verdict": v.label(),
            "cases": p.cases,
            "failures": p.failures,
            "counterexample": p.counterexample,
            "exhausted": p.exhausted,
        }));
    }
    let summary = format!(
        "suite {}: {}, {} properties, {} failures (seed {seed})",
        name.label(),
        verdict.label(),
        props.len(),
        rep.failures()
    );
    Ok(r.line(summary).record(json!({
        "suite": name.label(),
        "verdict": verdict.label(),
        "properties": props.len(),
        "failures": rep.failures(),
        "seed": seed,
    })))
}
