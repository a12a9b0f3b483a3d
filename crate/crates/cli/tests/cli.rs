use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use duropoly_cli::io::{parse_json, SolutionDoc};
use duropoly_core::oracle::verify_spne;
use duropoly_core::Rational;
use tempfile::TempDir;

fn duropoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duropoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn four(dir: &Path) -> PathBuf {
    write(
        dir,
        "four.json",
        r#"{"valuations": ["100", "85", "80", "50"], "periods": 2}"#,
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_table() {
    let dir = TempDir::new().unwrap();
    let out = duropoly(&["solve", s(&four(dir.path()))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1       80     2       2"), "{text}");
    assert!(text.contains("2       50     2       4"), "{text}");
    assert!(text.contains("profit: 260"), "{text}");
}

#[test]
fn solve_csv() {
    let dir = TempDir::new().unwrap();
    let out = duropoly(&["solve", s(&four(dir.path())), "--format", "csv"]);
    assert_eq!(stdout(&out), "period,price,buyers,cutoff\n1,80,2,2\n2,50,2,4\n");
}

#[test]
fn solution_json_round_trips_and_verifies() {
    let dir = TempDir::new().unwrap();
    let inst = write(
        dir.path(),
        "mixed.json",
        r#"{"valuations": ["7/2", 3, "3", "1/3", 2], "periods": 3}"#,
    );
    let sol = dir.path().join("sol.json");
    let out = duropoly(&["solve", s(&inst), "--format", "json", "--out", s(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let doc: SolutionDoc = parse_json(&fs::read_to_string(&sol).unwrap()).unwrap();
    assert!(verify_spne(&doc.instance, &doc.solution).unwrap().is_empty());
    assert_eq!(doc.instance.value(1), &Rational::new(7, 2));

    let out = duropoly(&["verify", s(&inst), "--solution", s(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no profitable deviation"));
}

#[test]
fn tampered_solution_is_a_violation() {
    let dir = TempDir::new().unwrap();
    let inst = four(dir.path());
    let sol = dir.path().join("sol.json");
    duropoly(&["solve", s(&inst), "--format", "json", "--out", s(&sol)]);
    let mut json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&sol).unwrap()).unwrap();
    json["solution"]["prices"][0] = "100".into();
    fs::write(&sol, json.to_string()).unwrap();
    let out = duropoly(&["verify", s(&inst), "--solution", s(&sol)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("duropolist"));
}

#[test]
fn bounds_and_tight() {
    let dir = TempDir::new().unwrap();
    let out = duropoly(&["bounds", s(&four(dir.path())), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "instance_id,N,T,Pi_M,Pi_D,sum_p,p1,ratio_num,ratio_den,ratio_decimal,bounds_ok\n\
         1,4,2,240,260,260,80,13,12,1.083333,true\n"
    );

    let out = duropoly(&["tight", "--n", "11", "--k", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["report"]["ratio"], "21/11");
    assert_eq!(json["ratio_decimal"], "1.909091");
    assert_eq!(json["instance"]["valuations"][1], "1/11");

    let out = duropoly(&["tight", "--n", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pacman_report() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "p.json", r#"{"valuations": [9, 3, 1], "periods": 3}"#);
    let out = duropoly(&["pacman", s(&inst), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["eligible"], true);
    assert_eq!(json["pacman_revenue"], "13");
    assert_eq!(json["duropoly_profit"], "13");
    assert_eq!(json["subset_property"], true);
}

#[test]
fn nonskim_demo_and_profiles() {
    let out = duropoly(&["nonskim", "--demo", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["skimming"], false);
    assert_eq!(json["outcome"]["revenue"], "160");
    assert_eq!(json["swapped"]["skimming"], true);
    assert_eq!(json["swapped"]["outcome"]["revenue"], "160");
    assert_eq!(json["swapped"]["outcome"]["mu2"], "45");

    let dir = TempDir::new().unwrap();
    let inst = write(
        dir.path(),
        "three.json",
        r#"{"valuations": [80, 70, 45], "periods": 2}"#,
    );
    let good = write(
        dir.path(),
        "good.json",
        r#"{"mu1": "70", "thresholds": {"80": "45", "70": "70", "45": "45"}}"#,
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"mu1": "80", "thresholds": {"80": "45", "70": "70", "45": "45"}}"#,
    );
    assert_eq!(
        duropoly(&["verify", s(&inst), "--profile", s(&good)]).status.code(),
        Some(0)
    );
    assert_eq!(
        duropoly(&["verify", s(&inst), "--profile", s(&bad)]).status.code(),
        Some(2)
    );
    assert_eq!(
        duropoly(&["nonskim", s(&inst), "--profile", s(&good)]).status.code(),
        Some(0)
    );

    let out = duropoly(&["nonskim", s(&inst), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["best_revenue"], "160");
    assert_eq!(json["solver_profit"], "160");
}

#[test]
fn oracle_and_size_guard() {
    let dir = TempDir::new().unwrap();
    let out = duropoly(&["oracle", s(&four(dir.path()))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("enumerated profit          260"));

    let big = write(
        dir.path(),
        "big.json",
        r#"{"valuations": [1,2,3,4,5,6,7,8,9,10,11,12,13,14,15], "periods": 2}"#,
    );
    let out = duropoly(&["oracle", s(&big)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N <= 14"));
}

#[test]
fn validation_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"valuations": [], "periods": 2}"#, "empty"),
        (r#"{"valuations": [1, -2], "periods": 2}"#, "negative"),
        (r#"{"valuations": [1], "periods": 0}"#, "periods"),
        (r#"{"valuations": [1, "2.5"], "periods": 1}"#, "valuations[1]"),
        ("{\"valuations\": [1],\n \"periods\": \"x\"}", "line 2"),
    ];
    for (k, (body, needle)) in cases.iter().enumerate() {
        let path = write(dir.path(), &format!("bad{k}.json"), body);
        let out = duropoly(&["solve", s(&path)]);
        assert_eq!(out.status.code(), Some(1), "{body}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{body}: {err}");
    }
    assert_eq!(duropoly(&["solve", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(duropoly(&["sweep", "--max-n", "1"]).status.code(), Some(1));
    assert_eq!(duropoly(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--count", "200", "--max-n", "8", "--max-t", "3", "--seed", "7"];
    let a = duropoly(&args);
    let b = duropoly(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 201);
    let other = duropoly(&["sweep", "--count", "200", "--max-n", "8", "--max-t", "3", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}
