//! End-to-end runs of the `finconv` binary: exit codes, output shapes, and
//! determinism of mining reports across processes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn finconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finconv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn space_summary_and_opens() {
    let out = finconv(&["space", &corpus("chain3.fcv"), "--opens"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3 points"));
    assert!(text.contains("topological: false"));
    assert!(text.contains("open {a b}"));
}

#[test]
fn check_exit_codes() {
    // Discontinuous swap: exit 1.
    let out = finconv(&["check", "continuity", &corpus("sierpinski.fcv"), "swap"]);
    assert_eq!(out.status.code(), Some(1));
    // Identity: exit 0.
    let out = finconv(&["check", "continuity", &corpus("sierpinski.fcv"), "id"]);
    assert_eq!(out.status.code(), Some(0));
    // Missing item: input error, exit 2.
    let out = finconv(&["check", "continuity", &corpus("sierpinski.fcv"), "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // Unreadable file: exit 2.
    let out = finconv(&["check", "continuity", "/no/such/file.fcv", "f"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pasting_counterexample_verdict() {
    let out = finconv(&[
        "check",
        "pasting",
        &corpus("pasting-counterexample.fcv"),
        "C",
        "--maps",
        "m0,m1",
        "--target",
        "D",
    ]);
    // Hypotheses unmet, so a discontinuous glue is not a lemma violation.
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("glue continuous: false"), "{text}");
    assert!(text.contains("Mixed"), "{text}");
}

#[test]
fn kent_and_biquotient_on_the_witness() {
    let out = finconv(&["check", "kent", &corpus("disjoint-chains.fcv"), "X", "q"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("structures coincide: false"));
    assert!(text.contains("biquotient: false"));

    let out = finconv(&[
        "check",
        "biquotient",
        &corpus("disjoint-chains.fcv"),
        "q",
        "--search-covers",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("cover-search oracle: false"));
}

#[test]
fn formulas_eval_prints_reduced_fractions() {
    let out = finconv(&["formulas", "eval", "phi", "1/2", "1/4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3/8");
    let out = finconv(&["formulas", "eval", "psi", "0", "1/2"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = finconv(&["formulas", "eval", "chi", "3/2", "0"]);
    assert_eq!(out.status.code(), Some(2), "out-of-range input is an input error");
    let out = finconv(&["formulas", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all identities hold"));
}

#[test]
fn mine_reports_are_byte_identical_and_list_works() {
    let args = [
        "mine",
        "--property",
        "pc-product",
        "--seed",
        "5",
        "--count",
        "60",
        "--max-points",
        "4",
    ];
    let first = finconv(&args);
    let second = finconv(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("violations: 0"));

    let out = finconv(&["mine", "--list"]);
    let text = stdout(&out);
    assert!(text.contains("pasting"));
    assert!(text.contains("kent"));

    let out = finconv(&["mine", "--property", "no-such-property"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn op_pipeline_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("finconv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let exp_path: PathBuf = dir.join("exp.fcv");
    let out = finconv(&[
        "op",
        "exponential",
        &corpus("sierpinski.fcv"),
        "S",
        "S",
        "--name",
        "E",
        "--out",
        exp_path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // The emitted document is self-describing: re-check a map from it.
    let out = finconv(&["check", "continuity", exp_path.to_str().expect("utf8"), "f1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = finconv(&["space", exp_path.to_str().expect("utf8"), "--name", "E"]);
    assert!(stdout(&out).contains("topological: true"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn replay_round_trips_a_witness_document() {
    let out = finconv(&["replay", "kent", &corpus("disjoint-chains.fcv")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pass"));
}

#[test]
fn export_dot_marks_closure_edges() {
    let out = finconv(&["export-dot", &corpus("chain3.fcv")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"a\" -> \"c\" [style=dashed, color=gray];"));
}
