//! End-to-end tests driving the compiled `charlev` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn charlev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charlev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn file_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("report file exists"))
        .expect("report file is valid JSON")
}

#[test]
fn table_markdown_lists_classes_and_irreducibles() {
    let out = charlev(&["table", "--group", "cyclic:6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# Character table of C6"));
    assert!(text.contains("- order: 6"));
    assert!(text.contains("| element order | 1 | 2 | 3 | 3 | 6 | 6 |"));
    assert!(text.contains("| X.6 |"));
    assert!(text.contains("`E(3)`"));
}

#[test]
fn table_json_has_full_structure() {
    let v = stdout_json(&charlev(&["table", "--group", "quaternion8", "--format", "json"]));
    assert_eq!(v["name"], "Q8");
    assert_eq!(v["order"], 8);
    assert_eq!(v["num_classes"], 5);
    assert_eq!(v["exponent"], 4);
    let mut degrees: Vec<u64> = v["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|chi| chi["degree"].as_u64().unwrap())
        .collect();
    degrees.sort();
    assert_eq!(degrees, [1, 1, 1, 1, 2]);
    let sizes: u64 = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 8);
}

#[test]
fn levels_json_matches_known_histogram() {
    let v = stdout_json(&charlev(&["levels", "--group", "cyclic:8", "-p", "2"]));
    assert_eq!(v["group"], "C8");
    assert_eq!(
        v["histograms"],
        json!([{"prime": 2, "counts": {"0": 2, "2": 2, "3": 4}, "total": 8}])
    );
    let conductors: Vec<u64> = v["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["conductor"].as_u64().unwrap())
        .collect();
    assert_eq!(conductors, [1, 8, 8, 8, 8, 4, 4, 1]);
}

#[test]
fn verify_single_group_passes() {
    let out = charlev(&["verify", "--group", "symmetric:4", "-p", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["totals"]["fail"], 0);
    assert_eq!(v["totals"]["pass"], 8);
    assert_eq!(v["totals"]["not_applicable"], 1);
    assert_eq!(v["results"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_corpus_is_green_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    for p in [&p1, &p2] {
        let out = charlev(&["verify", "--all", "--out", p.to_str().unwrap()]);
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let note = String::from_utf8(out.stdout).unwrap();
        assert!(note.contains("report written to"), "stdout: {note}");
    }
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(b1, b2, "repeated runs must produce byte-identical reports");
    let v = file_json(&p1);
    assert_eq!(v["totals"]["fail"], 0);
    assert_eq!(v["totals"]["pass"], 469);
    assert_eq!(v["totals"]["not_applicable"], 89);
}

#[test]
fn verify_markdown_report_renders() {
    let out = charlev(&["verify", "--group", "psl2:7", "--format", "md"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PSL2(7)"));
    assert!(text.contains("## Checks"));
    assert!(text.contains("pass"));
    assert!(!text.contains("**FAIL**"));
}

#[test]
fn group_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("klein.json");
    std::fs::write(
        &path,
        r#"{"name": "V4", "degree": 4, "generators": [[[1,2],[3,4]], [[1,3],[2,4]]]}"#,
    )
    .unwrap();
    let v = stdout_json(&charlev(&["table", "--group", path.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["name"], "V4");
    assert_eq!(v["order"], 4);
    assert_eq!(v["num_classes"], 4);
    assert!(v["irreducibles"]
        .as_array()
        .unwrap()
        .iter()
        .all(|chi| chi["degree"] == 1));
}

#[test]
fn unknown_family_fails_cleanly() {
    let out = charlev(&["table", "--group", "nosuch:5"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown family"), "stderr: {err}");
}

#[test]
fn order_cap_is_enforced() {
    let out = charlev(&["table", "--group", "symmetric:9"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--max-order"), "stderr: {err}");
}

#[test]
fn corpus_list_json_matches_builtins() {
    let v = stdout_json(&charlev(&["corpus", "list", "--format", "json"]));
    let groups = v.as_array().unwrap();
    assert_eq!(groups.len(), 30);
    let names: Vec<&str> = groups.iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]), "names sorted: {names:?}");
    for expected in ["C8", "Q8", "S4", "PSL2(8)"] {
        assert!(names.contains(&expected), "missing {expected}");
    }
    assert!(groups
        .iter()
        .all(|g| g["degree"].is_u64() && g["generators"].is_array()));
}
