use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn analyze_reports_invariants_and_components() {
    let out = run(&["analyze", "A^2*B^-2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "charvar-analyze/1");
    assert_eq!(v["invariants"]["trace"], 6);
    assert_eq!(v["invariants"]["b1"], 3);
    let comps = v["decomposition"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(v["binary_dihedral_characters"].as_array().unwrap().len(), 2);
    assert_eq!(v["axes"]["fixed_axes_of_square"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["bending_parameters"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_non_hyperbolic_warns() {
    let out = run(&["analyze", "A*B"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not hyperbolic"));
    let v = json(&out);
    assert!(v["decomposition"].is_null());
}

#[test]
fn malformed_word_is_input_error() {
    for w in ["A^x", "C", "A^"] {
        let out = run(&["analyze", w]);
        assert_eq!(out.status.code(), Some(1), "word {w}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn census_csv_matches_short_rows() {
    let out = run(&["census", "--max-length", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "word,trace,o_phi2,b1,components,genera,binary_dihedral,status");
    assert_eq!(lines[1], "A*B^-1,3,3,1,1,0,2,certified");
    assert_eq!(lines[2], "A*B^-2,4,2,2,1,0,2,certified");
    assert_eq!(lines[3], "A^2*B^-1,4,2,2,1,0,2,certified");
    assert_eq!(lines.len(), 4);
}

#[test]
fn census_explicit_words_and_positive_alphabet() {
    let out = run(&["census", "--words", "A^2*B^3, A^3*B^3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "charvar-census/1");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["trace"], -4);
    assert_eq!(rows[1]["components"], 3);

    let out = run(&["census", "--max-length", "5", "--alphabet", "AB"]);
    let v = json(&out);
    let words: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["word"].as_str().unwrap()).collect();
    assert_eq!(words, ["A^2*B^3", "A^3*B^2"]);
}

#[test]
fn census_budget_exhaustion_exits_two() {
    let out = run(&["census", "--words", "A*B^-2*A*B^-2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["rows"][0]["status"], "budget_exceeded");
}

#[test]
fn unknown_alphabet_is_input_error() {
    let out = run(&["census", "--alphabet", "xyz"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_reports_pass() {
    let out = run(&["family", "M", "--n", "3", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "charvar-family/1");
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true)));
}

#[test]
fn family_rejects_even_n() {
    let out = run(&["family", "N", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["family", "Q"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_on_census_word() {
    let out = run(&["verify", "A*B^-1*A*B^-1", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "charvar-verify/1");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(v["fibers"]["pairs"], 10);
}

#[test]
fn verify_non_hyperbolic_is_input_error() {
    let out = run(&["verify", "A*B"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["census", "--max-length", "5"][..],
        &["verify", "A^2*B^-3", "--samples", "8", "--seed", "3"][..],
        &["analyze", "A*B^-1*A*B^-2", "--format", "md"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
}

#[test]
fn markdown_census_has_table() {
    let out = run(&["census", "--max-length", "2", "--format", "md"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# Census"));
    assert!(text.contains("| A*B^-1 | 3 | 3 | 1 | 1 | 0 | 2 | certified |"));
}
