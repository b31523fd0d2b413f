use enriques18::enumerator::CandidateList;
use enriques18::golden::GoldenTables;
use enriques18::shioda_inose::CurveGraphJson;
use enriques18_cli::{LabelReport, LefschetzReport, RealizeReport, VerifyReport};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enriques18"))
        .args(args)
        .env_remove("ENRIQUES18_GOLDEN_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    let text = stdout(&o);
    let value: T = serde_json::from_str(&text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(value, again);
    assert_eq!(
        serde_json::from_str::<serde_json::Value>(&text).unwrap(),
        serde_json::to_value(&value).unwrap()
    );
    value
}

#[test]
fn verify_full_run() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().last().unwrap(),
        "5/5, 48(40+8), 3/3, I6 impossible; all identities exact"
    );
}

#[test]
fn verify_sequential_matches_parallel() {
    let a: VerifyReport = round_trip(&["verify"]);
    let b: VerifyReport = round_trip(&["verify", "--sequential"]);
    assert_eq!(a, b);
    assert!(a.ok);
}

#[test]
fn verify_only_lefschetz() {
    let o = run(&["verify", "--only", "lefschetz"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "all identities exact");
}

#[test]
fn enumerate_index3_groups() {
    let list: CandidateList = round_trip(&["enumerate", "--index", "3"]);
    assert_eq!(list.types.len(), 48);
    let text = stdout(&run(&["enumerate", "--index", "3"]));
    let headers: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with(' ') && !l.starts_with("index"))
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    assert_eq!(
        headers,
        ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII"]
    );
}

#[test]
fn enumerate_index6_empty_with_trace() {
    let list: CandidateList = round_trip(&["enumerate", "--index", "6"]);
    assert!(list.types.is_empty());
    assert!(list.trace.unwrap().impossible);
}

#[test]
fn unsupported_index_is_usage_error() {
    assert_eq!(run(&["enumerate", "--index", "7"]).status.code(), Some(2));
    assert_eq!(run(&["host-graph", "--index", "6"]).status.code(), Some(2));
    assert_eq!(run(&["realize", "--index", "3", "--type", "X7"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn realize_verdicts() {
    let out = stdout(&run(&["realize", "--index", "3", "--type", "D9+D9"]));
    assert!(out.contains("indeterminate"));
    let out = stdout(&run(&["realize", "--index", "2", "--type", "A2+A16"]));
    assert!(out.contains("excluded: even rank"));
    let r: RealizeReport = round_trip(&["realize", "--index", "2", "--type", "A9+A9"]);
    assert!(r.entry.verdict.is_realized());
    let out = stdout(&run(&["realize", "--index", "2", "--type", "A9+A9"]));
    assert!(out.contains("realized on S2"));
    assert!(out.contains("F1-"));
}

#[test]
fn label_and_lefschetz_round_trip() {
    let l: LabelReport = round_trip(&["label", "--index", "4", "--type", "A9+A9"]);
    assert_eq!(l.labelings.len(), 1);
    let l: LabelReport = round_trip(&["label", "--index", "4", "--type", "A7+A11"]);
    assert!(l.excluded.unwrap().contains("minimum 5"));
    let r: LefschetzReport = round_trip(&["lefschetz", "--index", "6"]);
    assert_eq!(r.count_identity.as_deref(), Some("ℓ - c = 1"));
    assert!(r.identities.iter().all(|c| c.exact));
}

#[test]
fn host_graph_round_trip() {
    let g: CurveGraphJson = round_trip(&["host-graph", "--index", "3"]);
    assert_eq!(g.curves.len(), 24);
    assert_eq!(g.edges.len(), 27);
    let g: CurveGraphJson = round_trip(&["host-graph", "--index", "4"]);
    assert_eq!(g.edges.len(), 28);
    assert_eq!(g.isolated_points.len(), 12);
}

#[test]
fn corrupted_golden_reports_diff() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = GoldenTables::embedded();
    let dropped = g.index3.realized.remove(0).type_name;
    g.index2_4.index2[0].chains.last_mut().unwrap().curves.swap(0, 1);
    g.write(dir.path()).unwrap();
    let path = dir.path().to_str().unwrap();

    let o = run(&["verify", "--golden-dir", path]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains(&format!("unexpected realized: {dropped}")), "{out}");
    assert!(out.contains("invalid witness: A1+A17"), "{out}");

    std::fs::write(dir.path().join("index3.json"), "{").unwrap();
    assert_eq!(run(&["verify", "--golden-dir", path]).status.code(), Some(1));
}

#[test]
fn golden_dir_from_env() {
    let dir = tempfile::tempdir().unwrap();
    GoldenTables::embedded().write(dir.path()).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_enriques18"))
        .args(["verify", "--only", "index4"])
        .env("ENRIQUES18_GOLDEN_DIR", "/nonexistent/golden")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_enriques18"))
        .args([
            "verify",
            "--only",
            "index4",
            "--golden-dir",
            dir.path().to_str().unwrap(),
        ])
        .env("ENRIQUES18_GOLDEN_DIR", "/nonexistent/golden")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
