//! End-to-end tests of the `invsemi` binary: spawn the real executable and
//! check output and exit codes.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn invsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invsemi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("well-formed JSON on stdout")
}

#[test]
fn census_order_3_counts() {
    let out = invsemi(&["census", "-n", "3", "--format", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["involution_semigroups"], 15);
    assert_eq!(v["semigroups_up_to_iso"], 24);
    assert_eq!(v["nontrivial_involution"], 3);
}

#[test]
fn census_rejects_large_order() {
    let out = invsemi(&["census", "-n", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("orders 1 through 5"));
}

#[test]
fn census_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let first = invsemi(&["census", "-n", "3", "--cache-dir", dir_arg, "--format", "json"]);
    assert_eq!(code(&first), 0);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!files.is_empty(), "cache directory stays empty");
    let second = invsemi(&["census", "-n", "3", "--cache-dir", dir_arg, "--format", "json"]);
    assert_eq!(code(&second), 0);
    assert_eq!(json(&first), json(&second));
}

#[test]
fn check_identity_that_holds_exits_zero() {
    let out = invsemi(&["check", "--model", "a0", "--lhs", "x y x*", "--rhs", "x y* x*"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("holds"));
}

#[test]
fn check_identity_that_fails_exits_one_with_counterexample() {
    let out = invsemi(&["check", "--model", "a0", "--lhs", "x y", "--rhs", "y x"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("fails"));
    // The refutation names concrete values for the variables.
    assert!(text.contains("x") && text.contains("y"), "no assignment shown: {text}");
}

#[test]
fn check_text_and_json_verdicts_agree() {
    for (lhs, rhs, want) in [("x y x*", "x y* x*", true), ("x x*", "x* x", false)] {
        let text = invsemi(&["check", "--model", "a0", "--lhs", lhs, "--rhs", rhs]);
        let js = invsemi(&["check", "--model", "a0", "--lhs", lhs, "--rhs", rhs, "--format", "json"]);
        let expected_code = if want { 0 } else { 1 };
        assert_eq!(code(&text), expected_code);
        assert_eq!(code(&js), expected_code);
        assert_eq!(json(&js)["holds"], want);
    }
}

#[test]
fn check_brute_force_model_by_name() {
    let holds = invsemi(&["check", "--model", "sl3", "--lhs", "x y", "--rhs", "y x"]);
    assert_eq!(code(&holds), 0);
    // A4 is a noncommutative catalog row, resolved by name and swept directly.
    let fails = invsemi(&["check", "--model", "A4", "--lhs", "x y", "--rhs", "y x"]);
    assert_eq!(code(&fails), 1);
}

#[test]
fn check_inline_table_matches_named_model() {
    let named = invsemi(&["check", "--model", "b0", "--lhs", "x x*", "--rhs", "x* x", "--format", "json"]);
    let inline = invsemi(&[
        "check",
        "--table",
        "2212222222321224",
        "--inv",
        "1243",
        "--lhs",
        "x x*",
        "--rhs",
        "x* x",
        "--format",
        "json",
    ]);
    assert_eq!(code(&named), 0);
    // The inline route has no rule system, so it sweeps the table directly;
    // the verdict must still agree.
    assert_eq!(code(&inline), 0);
    assert_eq!(json(&inline)["holds"], true);
}

#[test]
fn malformed_word_is_a_usage_error() {
    let out = invsemi(&["check", "--model", "a0", "--lhs", "x((", "--rhs", "x"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error"));
}

#[test]
fn unknown_model_is_a_usage_error() {
    let out = invsemi(&["check", "--model", "nosuch", "--lhs", "x", "--rhs", "x"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown model"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = invsemi(&["census", "-n", "3", "--bogus"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn validate_accepts_a_good_table() {
    let out = invsemi(&["validate", "--table", "1112", "--inv", "12"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("valid"));
}

#[test]
fn validate_flags_a_broken_axiom_as_failure_not_usage() {
    let out = invsemi(&["validate", "--table", "1121", "--inv", "12"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("associativity"));
}

#[test]
fn validate_rejects_malformed_digits() {
    let out = invsemi(&["validate", "--table", "112", "--inv", "12"]);
    assert_eq!(code(&out), 2);
    let out = invsemi(&["validate", "--table", "11x2", "--inv", "12"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn normalize_zero_word_reports_evidence() {
    let out = invsemi(&["normalize", "--system", "b0", "--word", "x x*", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["zero"], true);
    assert!(v["evidence"].is_object());
}

#[test]
fn normalize_emits_replayable_trace() {
    let norm = invsemi(&["normalize", "--system", "a0", "--word", "c b a b* a*", "--format", "json"]);
    assert_eq!(code(&norm), 0, "stderr: {}", stderr(&norm));
    let v = json(&norm);
    assert_eq!(v["zero"], false);
    let trace = serde_json::to_string(&v["trace"]).unwrap();
    assert_eq!(v["trace"]["end"], v["normal"]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    std::fs::write(&path, &trace).unwrap();

    // Replay accepts, with and without the model-equivalence check.
    let ok = invsemi(&["verify-trace", "--rules", "a0", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&ok), 0, "stderr: {}", stderr(&ok));
    assert!(stdout(&ok).contains("accepted"));
    let modeled = invsemi(&[
        "verify-trace",
        "--rules",
        "a0",
        "--file",
        path.to_str().unwrap(),
        "--model",
        "a0",
    ]);
    assert_eq!(code(&modeled), 0);
    assert!(stdout(&modeled).contains("equivalent to the start"));

    // A tampered step must be rejected with exit 1.
    let mut tampered: serde_json::Value = serde_json::from_str(&trace).unwrap();
    tampered["steps"][0]["pos"] = serde_json::Value::from(99);
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&tampered).unwrap()).unwrap();
    let rejected = invsemi(&["verify-trace", "--rules", "a0", "--file", bad_path.to_str().unwrap()]);
    assert_eq!(code(&rejected), 1);
    assert!(stdout(&rejected).contains("rejected"));
}

#[test]
fn verify_trace_reads_stdin() {
    let norm = invsemi(&["normalize", "--system", "b0", "--word", "x a a y x*", "--format", "json"]);
    assert_eq!(code(&norm), 0, "stderr: {}", stderr(&norm));
    let v = json(&norm);
    assert_eq!(v["zero"], false, "word unexpectedly zero: {v}");
    let trace = serde_json::to_string(&v["trace"]).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_invsemi"))
        .args(["verify-trace", "--rules", "b0", "--file", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(trace.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_trace_rejects_garbage_json_as_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    std::fs::write(&path, "not json").unwrap();
    let out = invsemi(&["verify-trace", "--rules", "a0", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn canonical_agrees_with_check() {
    let a = invsemi(&["canonical", "--system", "a0", "--word", "x y x*", "--format", "json"]);
    let b = invsemi(&["canonical", "--system", "a0", "--word", "x y* x*", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(code(&b), 0);
    assert_eq!(json(&a)["canonical"], json(&b)["canonical"]);

    let zero = invsemi(&["canonical", "--system", "a0", "--word", "x x* x"]);
    assert_eq!(code(&zero), 0);
    assert!(stdout(&zero).contains('0'));
}

#[test]
fn table1_lists_all_rows() {
    let out = invsemi(&["table1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out)["rows"].as_array().unwrap().len();
    assert_eq!(rows, 25);

    let one = invsemi(&["table1", "--name", "B3"]);
    assert_eq!(code(&one), 0);
    assert!(stdout(&one).contains("B3"));

    let missing = invsemi(&["table1", "--name", "Z9"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn classify_census_labels_every_class() {
    let out = invsemi(&["classify", "-n", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let entries = json(&out)["entries"].as_array().unwrap().len();
    assert_eq!(entries, 15);
}

#[test]
fn classify_single_model_by_name() {
    let out = invsemi(&["classify", "--model", "a0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["label"], "A0");
}

#[test]
fn enumerate_lists_star_classes() {
    let out = invsemi(&["enumerate", "-n", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn quick_selftest_passes() {
    let out = invsemi(&["selftest", "--quick"]);
    assert_eq!(code(&out), 0, "battery output:\n{}", stdout(&out));
    assert!(stdout(&out).contains("10/10 checks passed"));
}
