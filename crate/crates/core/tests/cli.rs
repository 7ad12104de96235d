use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn smallcover(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_smallcover"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn bott(dims: &str, blocks: &str) -> String {
    format!(
        r#"{{"polytope": {{"type": "product_of_simplices", "dims": {dims}}},
            "lambda": {{"type": "bott", "dims": {dims}, "lower_blocks": {blocks}}}}}"#
    )
}

#[test]
fn validate_accepts_and_rejects() {
    let ok = smallcover(&["validate"], &bott("[1, 1]", "[[1]]"));
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("valid: yes"));

    // two adjacent edges of the square share a vector
    let bad = r#"{"polytope": {"type": "dual_complex", "n": 2, "facets": 4,
                  "maximal_simplices": [[0, 1], [1, 2], [2, 3], [0, 3]]},
                  "lambda": {"type": "explicit", "n": 2, "vectors": [[1, 0], [1, 0], [0, 1], [1, 1]]}}"#;
    let o = smallcover(&["--format", "json", "validate"], bad);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violation"], serde_json::json!([0, 1]));
}

#[test]
fn malformed_input_exits_one() {
    let o = smallcover(&["cohomology"], "{\"polytope\": ");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let o = smallcover(&["bounds", "/nonexistent/input.json"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cohomology_reports_relations_and_basis() {
    let o = smallcover(&["--format", "json", "cohomology", "--print-basis"], &bott("[1, 1, 1]", "[[1], [0], [0]]"));
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cohomology"]["dims"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["presentation"]["relations"], serde_json::json!(["y1^2", "y1y2 + y2^2", "y3^2"]));
    assert_eq!(v["cohomology"]["fundamental"]["passed"], true);
    assert_eq!(v["cohomology"]["basis"][3], serde_json::json!(["y1y2y3"]));
    assert!(v.get("timing").is_none());
}

#[test]
fn monomial_cap_exits_two() {
    let o = smallcover(&["cohomology", "--monomial-cap", "2"], &bott("[1, 1, 1]", "[[1], [0], [0]]"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("budget exceeded"));
}

#[test]
fn bounds_from_file_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m3.json");
    std::fs::write(&path, bott("[1, 1, 1]", "[[1], [0], [1]]")).unwrap();
    let o = smallcover(&["--format", "json", "bounds", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let b = &v["bounds"];
    assert_eq!((b["tc"]["lo"].as_u64(), b["tc"]["hi"].as_u64()), (Some(6), Some(7)));
    assert_eq!(b["tcs"]["exact"], 7);
    assert_eq!(b["zcl"]["length"], 5);
    assert!(b["zcl"]["certificate"].as_str().unwrap().contains("!= 0, witness"));

    let text = smallcover(&["bounds", "--timing", path.to_str().unwrap()], "");
    assert!(stdout(&text).contains("timing: cohomology"));
}

#[test]
fn tiny_budget_exits_two() {
    let o = smallcover(&["bounds", "--budget", "1"], &bott("[1, 1, 1, 1]", "[[1], [0], [1], [0], [0], [1]]"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_lists_every_matrix_in_order() {
    let o = smallcover(&["--format", "json", "classify", "--dims", "1,1,1"], "");
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 8);
    let bits: Vec<&str> = rows.iter().map(|r| r["bits"].as_str().unwrap()).collect();
    let mut sorted = bits.clone();
    sorted.sort();
    assert_eq!(bits, sorted);
    assert_eq!(rows[0]["tc"], serde_json::json!([4, 4]));

    let o = smallcover(&["classify", "--dims", "1,1,1,1,1,1,1,1", "--budget", "100"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repro_passes_and_detects_tampering() {
    let o = smallcover(&["repro", "--filter", "m3-101"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS m3-101"));

    let dump = smallcover(&["repro", "--dump-expected"], "");
    let mut exp: Value = serde_json::from_str(&stdout(&dump)).unwrap();
    exp["m3_101"]["tc"] = serde_json::json!([5, 7]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    std::fs::write(&path, exp.to_string()).unwrap();
    let o = smallcover(&["repro", "--filter", "m3", "--expected", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("PASS m3-100"));
    assert!(out.contains("FAIL m3-101"));
}

#[test]
fn unknown_expectation_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    std::fs::write(&path, r#"{"m3_102": {}}"#).unwrap();
    let o = smallcover(&["repro", "--expected", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
}
