//! Byte-exact output checks for every command. Set `BROOMCALC_BLESS=1` to
//! rewrite the expected files after an intended change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_broomcalc"))
        .args(args)
        .current_dir(root().join("fixtures"))
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("exit code"),
    }
}

fn compare(name: &str, actual: &str) {
    let path = root().join("golden").join(name);
    if std::env::var_os("BROOMCALC_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "output of {name} changed");
}

/// Runs `args`, checks the exit code and compares stdout with the golden
/// file `name.out`.
fn golden(name: &str, code: i32, args: &[&str]) {
    let r = run(args);
    assert_eq!(r.code, code, "{name}: exit code; stderr: {}", r.stderr);
    compare(&format!("{name}.out"), &r.stdout);
}

/// Like [`golden`] for commands that fail before producing output; the
/// message on stderr is compared instead.
fn golden_error(name: &str, args: &[&str]) {
    let r = run(args);
    assert_eq!(r.code, 2, "{name}: usage errors exit with 2");
    assert!(r.stdout.is_empty(), "{name}: nothing on stdout");
    compare(&format!("{name}.err"), &r.stderr);
}

#[test]
fn ordinals() {
    golden("ordinal_show", 0, &["ordinal", "show", "w^1*2+w^0*3"]);
    golden("ordinal_add", 0, &["ordinal", "add", "w+3", "w^2"]);
    golden("ordinal_add_json", 0, &["--json", "ordinal", "add", "w*2", "5"]);
    golden("ordinal_sub", 0, &["ordinal", "sub", "w+1", "w^2+5"]);
    golden("ordinal_cmp", 0, &["ordinal", "cmp", "w*2", "w+9"]);
    golden("ordinal_split", 0, &["ordinal", "split", "w*2+3"]);
    golden("ordinal_pi", 0, &["ordinal", "pi", "w*2", "--count", "8"]);
    golden("ordinal_pi_json", 0, &["--json", "ordinal", "pi", "w^2", "--count", "4"]);
    golden("ordinal_pi_inverse", 0, &["ordinal", "pi-inverse", "w*2", "w+1"]);
    golden_error("ordinal_bad", &["ordinal", "add", "w+", "3"]);
    golden_error("ordinal_sub_too_large", &["ordinal", "sub", "w", "3"]);
}

#[test]
fn brooms() {
    golden("broom_build", 0, &["broom", "build", "--level", "2"]);
    golden("broom_build_json", 0, &["--json", "broom", "build", "--level", "w"]);
    golden("broom_class", 0, &["broom", "class", "--term", "bw.sexp"]);
    golden("broom_class_singleton", 0, &["--json", "broom", "class", "--term", "singleton.sexp"]);
    golden(
        "broom_check_d",
        0,
        &["broom", "check-d", "--term", "b2.sexp", "--probes", "4", "--probe", "(1 | 0)", "--seed", "7"],
    );
    golden(
        "broom_check_d_json",
        0,
        &["--json", "broom", "check-d", "--term", "b1.sexp", "--probes", "2", "--breadth", "3", "--depth", "4"],
    );
    golden("broom_elements", 0, &["broom", "elements", "--term", "b2.sexp", "--breadth", "2"]);
    golden("broom_sample", 0, &["broom", "sample", "--term", "b1.sexp", "--breadth", "3"]);
    golden("broom_widen", 0, &["broom", "widen", "--term", "b1.sexp"]);
    golden_error("broom_widen_transfinite", &["broom", "widen", "--term", "bw.sexp"]);
    golden_error("broom_unknown_fork", &["broom", "class", "--term", "bad_fork.sexp"]);
    golden_error("broom_syntax", &["broom", "class", "--term", "bad_syntax.sexp"]);
}

#[test]
fn ranks_and_covers() {
    golden("rank_closed", 0, &["rank", "--term", "bw.sexp"]);
    golden("rank_tree", 0, &["--json", "rank", "--term", "fan.sexp"]);
    golden("rank_iterative", 0, &["rank", "--term", "b2.sexp", "--method", "iterative"]);
    golden("rank_iterative_fuel", 3, &["rank", "--term", "b2.sexp", "--method", "iterative", "--fuel", "2"]);
    golden("rank_union", 0, &["rank", "union", "b1.sexp", "b2.sexp", "singleton.sexp"]);
    golden("rank_union_json", 0, &["--json", "rank", "union", "bw.sexp", "b1.sexp"]);
    golden_error("rank_missing_term", &["rank"]);
    golden("cover_gap", 0, &["cover", "--target", "b2.sexp", "--covers", "b1.sexp", "singleton.sexp"]);
    golden("cover_coverable", 0, &["cover", "--target", "b1.sexp", "--covers", "b2.sexp"]);
    golden("cover_uncovered_json", 0, &["--json", "cover", "--target", "b1.sexp", "--covers", "offset.sexp", "--breadth", "2"]);
}

#[test]
fn maximal_trees_and_dot() {
    golden("talpha_enum", 0, &["talpha", "enum", "--alpha", "1", "--breadth", "3", "--depth", "5"]);
    golden("talpha_enum_json", 0, &["--json", "talpha", "enum", "--alpha", "w", "--breadth", "2", "--depth", "2"]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.dot");
    let r = run(&["talpha", "enum", "--alpha", "1", "--breadth", "3", "--depth", "5", "--dot", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, format!("wrote 4 nodes to {}\n", path.display()));
    compare("talpha_enum.dot", &fs::read_to_string(&path).unwrap());

    let empty = dir.path().join("empty.dot");
    let r = run(&["talpha", "enum", "--alpha", "0", "--depth", "0", "--dot", empty.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    compare("talpha_root.dot", &fs::read_to_string(&empty).unwrap());

    let blocked = dir.path().join("missing").join("t.dot");
    let r = run(&["talpha", "enum", "--alpha", "1", "--dot", blocked.to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn admissible_maps_and_extraction() {
    golden("admissible_pass", 0, &["admissible", "check", "--map", "can.sexp"]);
    golden("admissible_length", 1, &["admissible", "check", "--map", "badlen.sexp", "--depth", "1"]);
    golden("admissible_monotone_json", 1, &["--json", "admissible", "check", "--map", "badmono.sexp", "--breadth", "2", "--depth", "2"]);
    golden_error("admissible_bounds", &["admissible", "check", "--map", "badlen.sexp", "--depth", "2"]);
    golden("admissible_image", 0, &["admissible", "image", "--map", "blk.sexp", "--breadth", "4", "--depth", "1"]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("img.dot");
    let r = run(&["admissible", "image", "--map", "blk.sexp", "--breadth", "4", "--depth", "1", "--dot", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    compare("admissible_image.dot", &fs::read_to_string(&path).unwrap());

    golden("extract_found", 0, &["extract", "--image", "img.sexp", "--alpha", "1"]);
    golden("extract_too_small", 3, &["extract", "--image", "img.sexp", "--alpha", "2"]);
    golden("extract_not_well_founded_json", 1, &["--json", "extract", "--image", "img_not_wf.sexp", "--alpha", "1"]);
}

#[test]
fn complexity_calculators() {
    golden("complexity_y", 0, &["complexity", "y", "w+1"]);
    golden("complexity_absolute", 0, &["complexity", "absolute", "--family", "E<w*2"]);
    golden("complexity_absolute_exact_json", 0, &["--json", "complexity", "absolute", "--family", "E<=w+2"]);
    golden("complexity_talagrand", 0, &["complexity", "talagrand", "w+4"]);
    golden_error("complexity_talagrand_odd", &["complexity", "talagrand", "5"]);
    golden("complexity_inclusion", 0, &["complexity", "correspond", "--class", "F3"]);
    golden("complexity_metrizable", 0, &["complexity", "correspond", "--class", "G2", "--metrizable"]);
    golden("complexity_metrizable_borel_json", 0, &["--json", "complexity", "correspond", "--class", "Mw", "--metrizable"]);
    golden_error("complexity_metrizable_zero", &["complexity", "correspond", "--class", "A0", "--metrizable"]);
    golden("complexity_pair", 0, &["complexity", "pair", "w+1", "3"]);
    golden("complexity_pair_even", 0, &["complexity", "pair", "4", "3"]);
    golden("complexity_theorem", 0, &["complexity", "theorem", "w*2"]);
}

#[test]
fn suites() {
    golden("suite_complexity", 0, &["suite", "complexity"]);
    golden("suite_complexity_json", 0, &["--json", "suite", "complexity"]);
    golden("suite_all", 0, &["suite", "all"]);
    golden("suite_broken_union", 1, &["suite", "rank", "--break-rank-union"]);
    golden_error("suite_unknown", &["suite", "everything"]);
}
