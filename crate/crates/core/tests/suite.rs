use std::time::{Duration, Instant};

use broomcalc::suite::{run_suite, Fault, SuiteName, Verdict, DEFAULT_SEED};

#[test]
fn complexity_suite_has_four_passing_properties() {
    let r = run_suite(SuiteName::Complexity, DEFAULT_SEED, None);
    assert_eq!(r.verdict(), Verdict::Pass);
    assert_eq!(r.properties.len(), 4);
    assert_eq!(r.failures(), 0);
}

#[test]
fn broken_union_law_is_caught_with_a_counterexample() {
    let r = run_suite(SuiteName::All, DEFAULT_SEED, Some(Fault::BreakRankUnion));
    assert_eq!(r.verdict(), Verdict::Fail);
    let union = r
        .properties
        .iter()
        .find(|p| p.name == "rank_of_union_is_max")
        .unwrap();
    assert!(union.failures > 0);
    let ce = union.counterexample.as_deref().unwrap();
    assert!(ce.starts_with("members ["), "{ce}");
    assert!(r
        .properties
        .iter()
        .filter(|p| p.name != "rank_of_union_is_max")
        .all(|p| p.failures == 0));
}

#[test]
fn rank_suite_passes_quickly() {
    let start = Instant::now();
    let r = run_suite(SuiteName::Rank, DEFAULT_SEED, None);
    assert_eq!(r.verdict(), Verdict::Pass, "{:?}", r.properties);
    assert!(start.elapsed() < Duration::from_secs(60));
}

#[test]
fn other_seeds_pass_too() {
    for seed in [1, 2, 3] {
        let r = run_suite(SuiteName::All, seed, None);
        let failing: Vec<_> = r.properties.iter().filter(|p| p.failures > 0).collect();
        assert!(failing.is_empty(), "seed {seed}: {failing:?}");
    }
}
