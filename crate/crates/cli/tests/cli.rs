use std::process::{Command, Output};

use serde_json::Value;

fn gl6j(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl6j"))
        .args(args)
        .env("GL6J_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const GL4: [&str; 11] =
    ["sixj", "--n", "4", "--f1", "(aabc)", "--f2", "(abbc)", "--f3", "(abbc)", "--f4", "(aabc)"];

#[test]
fn gl4_example() {
    let mut args = GL4.to_vec();
    args.push("--oracle");
    let out = gl6j(&args, "2");
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["value"], doc["oracle"]);
    assert_eq!(doc["value"], "12/1");
    assert_eq!(doc["selection_size"], 12);
    assert_eq!(doc["weights"]["V1"], serde_json::json!([1, 1, 0, 0]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("6j-symbol = 12/1"));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let cases: Vec<Vec<&str>> = vec![
        GL4.to_vec(),
        vec!["selection", "--n", "4", "--f1", "(aabc)", "--f2", "(abbc)", "--f3", "(abbc)", "--f4", "(aabc)"],
        vec!["expand", "--n", "4", "((a1 a2 a3 b1)(b2 c1 c2 c3))"],
        vec!["check", "--n", "3", "((a1 a2 b1)(a1 c1 c2))^2"],
        vec!["overlay", "--weight", "2,1,0", "a1^1 a2^1 a3^2"],
    ];
    for args in cases {
        let runs: Vec<Vec<u8>> = ["1", "4", "1"].iter().map(|t| gl6j(&args, t).stdout).collect();
        assert!(!runs[0].is_empty());
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn check_single_bracket() {
    let doc = json(&gl6j(&["check", "--n", "2", "((a1 b1))"], "1"));
    assert_eq!(doc["is_semi_invariant"], true);
    assert_eq!(doc["weight"], serde_json::json!([1, 1]));
}

#[test]
fn expand_lists_z_variables() {
    let doc = json(&gl6j(&["expand", "--n", "2", "((a1 b1))^2"], "1"));
    let poly = doc["poly"].as_array().unwrap();
    assert_eq!(poly.len(), 2);
    assert_eq!(poly[0]["zvar"], "Z1[a_{1} b_{2}]");
    assert_eq!(poly[0]["coeff"], 1);
    assert_eq!(poly[1]["coeff"], -1);
    assert_eq!(doc["powers"], serde_json::json!([2]));
    assert!(doc.get("warning").is_none());
}

#[test]
fn zero_expansion_warns() {
    let out = gl6j(&["expand", "--n", "2", "((a1 a1)(a2 b1))"], "1");
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["poly"], serde_json::json!([]));
    assert_eq!(doc["warning"], "zero expansion");
}

#[test]
fn syntax_error_document() {
    let out = gl6j(&["expand", "--n", "2", "((a1 b1"], "1");
    assert!(!out.status.success());
    let doc = json(&out);
    assert_eq!(doc["error"]["kind"], "syntax");
    assert_eq!(doc["error"]["offset"], 7);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unclosed bracket"));
}

#[test]
fn validation_error_document() {
    let out = gl6j(&["check", "--n", "2", "((a2 b1))"], "1");
    assert!(!out.status.success());
    assert_eq!(json(&out)["error"]["kind"], "invalid_expression");
}

#[test]
fn usage_error_document() {
    let out = gl6j(&["sixj", "--n", "2", "--f1", "(ab)"], "1");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}

#[test]
fn mismatched_problem_warns_and_vanishes() {
    let args = ["sixj", "--n", "2", "--f1", "((a1 b1))", "--f2", "((a1 b1))", "--f3", "((a1 b1))", "--f4", "((a1 b1))", "--oracle"];
    let doc = json(&gl6j(&args, "1"));
    assert_eq!(doc["value"], "0/1");
    assert_eq!(doc["oracle"], "0/1");
    let warnings = doc["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().starts_with("family A4")));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("gl6j-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = gl6j(&["check", "--n", "2", "((a1 b1))", "--output", path.to_str().unwrap()], "1");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["is_semi_invariant"], true);
    std::fs::remove_dir_all(dir).unwrap();
}
