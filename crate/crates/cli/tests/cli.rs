use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polysupport"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_file(body: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const TRIANGLE: &str = r#"{"dim": 2, "points": [[0,0],[2,0],[0,2]]}"#;
const SEGMENT: &str = r#"{"dim": 2, "points": [[0,0],[2,2]]}"#;

#[test]
fn classify_triangle() {
    let f = json_file(TRIANGLE);
    let out = run(&["classify", "--support", path(&f)]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "good_exactly_in_chars");
    assert_eq!(v["primes"], serde_json::json!([2]));
}

#[test]
fn decompose_segment() {
    let f = json_file(SEGMENT);
    let v = stdout_json(&run(&["decompose", "--support", path(&f)]));
    assert_eq!(v["count"], 3);
    let v = stdout_json(&run(&["decompose", "--support", path(&f), "--nontrivial"]));
    assert_eq!(v["count"], 1);
}

#[test]
fn probe_triangle() {
    let f = json_file(TRIANGLE);
    let v = stdout_json(&run(&[
        "probe",
        "--support",
        path(&f),
        "--field",
        "2",
        "--max-ext",
        "2",
    ]));
    assert_eq!(v["status"], "all");
    let v = stdout_json(&run(&[
        "probe",
        "--support",
        path(&f),
        "--field",
        "3",
        "--max-ext",
        "2",
    ]));
    assert_eq!(v["status"], "empty");
}

#[test]
fn factor_and_irreducible() {
    let poly = r#"{"field": "3", "dim": 2, "terms": [{"exp": [3,0], "coeff": 1}, {"exp": [0,3], "coeff": 2}]}"#;
    let f = json_file(poly);
    let v = stdout_json(&run(&["factor", "--poly", path(&f)]));
    assert!(v["factorization"].is_object(), "{v}");
    let v = stdout_json(&run(&["irreducible", "--poly", path(&f)]));
    assert_eq!(v["irreducible"], false);

    let line = json_file(
        r#"{"field": "5", "dim": 2, "terms": [{"exp": [1,0], "coeff": 1}, {"exp": [0,1], "coeff": 1}, {"exp": [0,0], "coeff": 1}]}"#,
    );
    let v = stdout_json(&run(&["factor", "--poly", path(&line)]));
    assert!(v["factorization"].is_null());
    let v = stdout_json(&run(&["irreducible", "--poly", path(&line)]));
    assert_eq!(v["irreducible"], true);
}

#[test]
fn every_subcommand_prints_a_schema() {
    for sub in [
        "classify",
        "factor",
        "probe",
        "irreducible",
        "decompose",
        "witness",
        "verify",
        "ostrowski-fuzz",
    ] {
        let out = run(&[sub, "--schema"]);
        assert!(out.status.success(), "{sub}");
        assert!(stdout_json(&out).is_object(), "{sub}");
    }
}

#[test]
fn bad_input_exits_one_with_path() {
    let f = json_file(r#"{"dim": 2, "points": [[0,0],[1,"x"]]}"#);
    let out = run(&["classify", "--support", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("$.points[1][1]"), "{err}");

    let f = json_file("{not json");
    assert_eq!(
        run(&["classify", "--support", path(&f)]).status.code(),
        Some(1)
    );
    let f = json_file(r#"{"dim": 2, "points": [[0,0]], "extra": 1}"#);
    assert_eq!(
        run(&["classify", "--support", path(&f)]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["probe", "--support", "/nonexistent/file.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cap_exits_two() {
    let f = json_file(r#"{"dim": 2, "points": [[0,0],[1,0],[0,1],[1,1],[2,1]]}"#);
    let out = run(&[
        "probe",
        "--support",
        path(&f),
        "--field",
        "5",
        "--cap",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn repeated_runs_are_identical() {
    let f = json_file(r#"{"dim": 2, "points": [[0,0],[4,0],[0,2],[2,2]]}"#);
    for args in [
        vec!["decompose", "--support", path(&f)],
        vec!["classify", "--support", path(&f)],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&[
        "ostrowski-fuzz",
        "--seed",
        "3",
        "--count",
        "50",
        "--jobs",
        "1",
    ]);
    let b = run(&[
        "ostrowski-fuzz",
        "--seed",
        "3",
        "--count",
        "50",
        "--jobs",
        "4",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["failures"], 0);
}

#[test]
fn fuzz_requires_seed() {
    assert_ne!(run(&["ostrowski-fuzz"]).status.code(), Some(0));
}

#[test]
fn witness_round_trip() {
    let out = run(&["witness", "--primes", "2", "--case", "a"]);
    assert!(out.status.success());
    let f = json_file(std::str::from_utf8(&out.stdout).unwrap());
    let out = run(&["verify", "--witness", path(&f), "--fields", "2,3"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout_json(&out)["verification"].is_object());

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(f.path()).unwrap()).unwrap();
    doc["points"].as_array_mut().unwrap().pop();
    let g = json_file(&doc.to_string());
    assert_eq!(
        run(&["verify", "--witness", path(&g)]).status.code(),
        Some(1)
    );
}

#[test]
fn witness_with_verify_flag() {
    let out = run(&[
        "witness", "--primes", "", "--case", "a", "--verify", "--fields", "2,3",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout_json(&out)["verification"].is_object());
    assert_eq!(run(&["witness", "--primes", "4"]).status.code(), Some(1));
}
