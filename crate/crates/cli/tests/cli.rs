use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ujgrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ujgrade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

#[test]
fn census_matches_golden_files() {
    for (group, n) in [("Z2", "2"), ("Z2", "3"), ("Z3", "3"), ("Z4", "4"), ("Z2xZ2", "3")] {
        let out = ujgrade(&["enumerate", "--group", group, "--n", n]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden(&format!("census_{group}_n{n}.txt")), "{group} n={n}");
    }
}

#[test]
fn census_is_independent_of_worker_count() {
    let one = ujgrade(&["enumerate", "--group", "Z4", "--n", "4", "--jobs", "1"]);
    let many = ujgrade(&["enumerate", "--group", "Z4", "--n", "4", "--jobs", "7"]);
    assert_eq!(stdout(&one), stdout(&many));
}

#[test]
fn uj2_over_z2_has_four_classes() {
    let out = ujgrade(&["--machine", "enumerate", "--group", "Z2", "--n", "2"]);
    let rows: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let labels: Vec<&str> = rows.iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["E(0)", "E(1)", "MT(1;0)", "MT(1;1)"]);
}

fn write_standard(dir: &Path, label: &str, n: &str, seed: Option<&str>) -> std::path::PathBuf {
    let mut args = vec!["standard", "--group", "Z4", "--n", n, "--label", label];
    if let Some(s) = seed {
        args.extend(["--seed", s, "--flip"]);
    }
    let out = ujgrade(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let path = dir.join(format!("{}.json", seed.unwrap_or("std")));
    fs::write(&path, out.stdout).unwrap();
    path
}

#[test]
fn verify_accepts_a_standard_grading() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_standard(dir.path(), "E(1,3)", "3", None);
    let out = ujgrade(&["verify", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("pass\n"));
}

#[test]
fn verify_rejects_a_broken_grading() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    // e_11 alone in degree 1 is not closed: e_11 o e_11 = 2 e_11
    fs::write(
        &file,
        r#"{"group":"Z2","n":1,"components":[{"degree":"1","basis":[[[1,1,"1"]]]}]}"#,
    )
    .unwrap();
    let out = ujgrade(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("fail E-CLOSURE"));
}

#[test]
fn parse_failures_exit_with_3_and_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    fs::write(&file, "{ not json").unwrap();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["enumerate", "--group", "Q8", "--n", "2"], "E-PARSE"),
        (vec!["verify", file.to_str().unwrap()], "E-PARSE"),
        (vec!["good-seq", "--group", "Z2xZ2", "--n", "2", "--eta", "1", "--mu", "1"], "E-"),
        (
            vec!["check-identity", "--group", "Z2", "--n", "2", "--label", "E(1)", "--term", "x1:1 o"],
            "E-PARSE",
        ),
    ];
    for (args, code) in cases {
        let out = ujgrade(&args);
        assert_eq!(out.status.code(), Some(3), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with(&format!("error[{code}")), "{}", stderr(&out));
    }
    let out = ujgrade(&["separate", "--group", "Z2", "--n", "2", "MT(0;1)", "E(1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[E-INVOLUTION]") || stderr(&out).starts_with("error[E-LABEL]"));
}

#[test]
fn normalize_certificate_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_standard(dir.path(), "MT(2;3,1)", "4", Some("11"));
    let out = ujgrade(&["--machine", "normalize", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["label"], "MT(2;1,1)");
    assert_eq!(cert["verification"], "pass");
    let cert_path = dir.path().join("cert.json");
    fs::write(&cert_path, stdout(&out)).unwrap();
    let out = ujgrade(&["verify", file.to_str().unwrap(), "--certificate", cert_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("certificate pass"));

    // the same certificate does not fit a different grading
    let other = write_standard(dir.path(), "MT(2;0,1)", "4", Some("12"));
    let out = ujgrade(&["verify", other.to_str().unwrap(), "--certificate", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn separating_power_identity_revalidates() {
    let out = ujgrade(&["--machine", "separate", "--group", "Z2", "--n", "2", "E(0)", "MT(1;0)"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let s: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(s["method"], "power");
    let term = s["term"].as_str().unwrap();
    for (label, expected) in [(s["identity_of"].as_str().unwrap(), true), (s["not_identity_of"].as_str().unwrap(), false)] {
        let out = ujgrade(&["--machine", "check-identity", "--group", "Z2", "--n", "2", "--label", label, "--term", term]);
        assert!(out.status.success(), "{}", stderr(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["identity"], expected, "{label}");
    }
}

#[test]
fn good_sequences() {
    let good = ujgrade(&["good-seq", "--group", "Z3", "--n", "3", "--eta", "1,2", "--mu", "2,1"]);
    assert_eq!(stdout(&good), "good\n");
    let bad = ujgrade(&["good-seq", "--group", "Z3", "--n", "3", "--eta", "1,2", "--mu", "1,1"]);
    assert_eq!(stdout(&bad), "bad\n");
}

#[test]
fn identity_against_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_standard(dir.path(), "E(1,1)", "3", Some("3"));
    // degree-2 elements of E(1,1) on UJ_3 are multiples of e_13, which square to zero
    let out = ujgrade(&["check-identity", "--file", file.to_str().unwrap(), "--term", "pow(x1:2,2)"]);
    assert_eq!(stdout(&out), "identity\n");
    let out = ujgrade(&["check-identity", "--file", file.to_str().unwrap(), "--term", "( x1:1 o x2:1 )"]);
    assert_eq!(stdout(&out), "not an identity\n");
}
