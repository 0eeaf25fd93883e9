//! End-to-end tests of the coxcert binary: exit codes, output formats and
//! byte-level determinism.

use std::process::{Command, Output};

fn coxcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn roots_a2_document() {
    let out = coxcert(&["roots", "A2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["label"], "A2");
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["roots"].as_array().unwrap().len(), 6);
    // crystallographic coefficients serialize as plain integers
    assert!(doc["roots"][0][0].is_i64());
}

#[test]
fn roots_h4_uses_golden_pairs() {
    let out = coxcert(&["roots", "H4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["roots"].as_array().unwrap().len(), 120);
    // golden coefficients serialize as [a, b] integer pairs
    assert!(doc["roots"][0][0].is_array());
    assert_eq!(doc["roots"][0][0].as_array().unwrap().len(), 2);
}

#[test]
fn roots_rejects_unknown_labels() {
    for bad in ["Z9", "A9", "E5", "I2(7)", "", "τ3", "a3"] {
        let out = coxcert(&["roots", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(out.stdout.is_empty(), "{bad}");
    }
}

#[test]
fn verify_is_byte_identical_for_fixed_seed() {
    let args = [
        "verify",
        "--types",
        "A2,G2",
        "--checks",
        "prop-a,prop-b,prop-c,chamber-vector",
        "--seed",
        "7",
    ];
    let first = coxcert(&args);
    let second = coxcert(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn verify_jobs_do_not_change_output() {
    let base = [
        "verify",
        "--types",
        "A3,B3",
        "--checks",
        "prop-a,prop-c,decomposition",
        "--seed",
        "11",
    ];
    let one = coxcert(&[&base[..], &["--jobs", "1"]].concat());
    let four = coxcert(&[&base[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert!(four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_json_lines_with_summaries_last() {
    let out = coxcert(&["verify", "--types", "A2", "--checks", "prop-a,prop-b"]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let first_summary = lines.iter().position(|v| v.get("summary").is_some()).unwrap();
    assert!(lines[first_summary..].iter().all(|v| v.get("summary").is_some()));
    assert_eq!(lines.len() - first_summary, 2);
}

#[test]
fn verify_summary_format() {
    let out = coxcert(&[
        "verify",
        "--types",
        "A3",
        "--checks",
        "counterexample-a3",
        "--format",
        "summary",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("counterexample-a3 A3: 1 pass, 0 fail, 0 skipped"), "{text}");
    assert!(text.trim_end().ends_with("(1 instances)"), "{text}");
}

#[test]
fn verify_csv_format() {
    let out = coxcert(&[
        "verify",
        "--types",
        "A2",
        "--checks",
        "prop-b",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "check,label,j,alpha,instance,status,witness");
    assert_eq!(lines.count(), 4);
}

#[test]
fn verify_output_file() {
    let dir = std::env::temp_dir().join(format!("coxcert-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let out = coxcert(&[
        "verify",
        "--types",
        "G2",
        "--checks",
        "prop-b",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 4 + 1, "4 parabolics + 1 summary");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_rejects_bad_flags() {
    assert_eq!(coxcert(&["verify", "--types", "Z3"]).status.code(), Some(2));
    assert_eq!(coxcert(&["verify", "--checks", "prop-z"]).status.code(), Some(2));
    assert_eq!(coxcert(&["verify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(coxcert(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_max_rank_and_deep_flags_are_accepted() {
    // counterexample-a3 applies only to A3, so both runs stay small; the
    // deep flag merely widens the default type set
    let shallow = coxcert(&[
        "verify",
        "--checks",
        "counterexample-a3",
        "--format",
        "summary",
    ]);
    let deep = coxcert(&[
        "verify",
        "--checks",
        "counterexample-a3",
        "--format",
        "summary",
        "--deep",
        "--max-rank",
        "8",
    ]);
    assert!(shallow.status.success());
    assert!(deep.status.success());
    assert_eq!(shallow.stdout, deep.stdout);

    // max-rank filters every type out: empty output, still success
    let filtered = coxcert(&[
        "verify",
        "--types",
        "E6",
        "--checks",
        "prop-b",
        "--max-rank",
        "3",
        "--format",
        "summary",
    ]);
    assert!(filtered.status.success());
    let text = String::from_utf8(filtered.stdout).unwrap();
    assert!(text.starts_with("total: 0 pass"), "{text}");
}
