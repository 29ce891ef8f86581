use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const E1: &str = r#"{"q": 1, "A": [[{"num": [[0, "1"]]}, {"num": [[1, "1"]]}]], "b": [{"num": [[0, "1"]]}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_troplift"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_member_prints_witness() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "e1.json", E1);
    let point = write(dir.path(), "v.json", r#"{"v": ["0", "0"]}"#);
    let out = run(&["check", "-i", s(&inst), "-p", s(&point), "--expand", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "member");
    assert_eq!(json["witness"][0]["num"], serde_json::json!([[0, "1"], [1, "-1"]]));
    assert_eq!(json["witness"][1]["num"], serde_json::json!([[0, "1"]]));
    assert_eq!(json["expansion"][0], "1 - t");
    assert!(json["timings"]["decide"].is_number());
}

#[test]
fn check_not_member_exits_three() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "e1.json", E1);
    let point = write(dir.path(), "v.json", r#"{"v": ["1", "0"]}"#);
    for cmd in ["check", "lift"] {
        let out = run(&[cmd, "-i", s(&inst), "-p", s(&point)]);
        assert_eq!(code(&out), 3);
        let json = stdout_json(&out);
        assert_eq!(json["verdict"], "not_member");
        assert_eq!(json["reason"], "System3Infeasible");
        assert!(json.get("witness").is_none());
    }
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "e1.json", E1);
    let short = write(dir.path(), "short.json", r#"{"v": ["0"]}"#);
    let out = run(&["check", "-i", s(&inst), "-p", s(&short)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("short.json"));

    let float = write(dir.path(), "float.json", r#"{"q": 1, "A": [[{"num": [[0, "0.5"]]}]], "b": [{"num": [[0, "1"]]}]}"#);
    let point = write(dir.path(), "v1.json", r#"{"v": ["0"]}"#);
    let out = run(&["check", "-i", s(&float), "-p", s(&point)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("A[0][0].num[0][1]"));

    let broken = write(dir.path(), "broken.json", "{\"q\": 1,\n  \"A\": [[}");
    let out = run(&["check", "-i", s(&broken), "-p", s(&point)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["check", "-i", s(&missing), "-p", s(&point)])), 2);
}

#[test]
fn verify_accepts_result_and_rejects_bad_witness() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "e1.json", E1);
    let point = write(dir.path(), "v.json", r#"{"v": ["0", "0"]}"#);
    let out = run(&["check", "-i", s(&inst), "-p", s(&point)]);
    let result = write(dir.path(), "result.json", &String::from_utf8(out.stdout).unwrap());
    let out = run(&["verify", "-i", s(&inst), "-p", s(&point), "-w", s(&result)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["valid"], true);

    let bad = write(dir.path(), "bad.json", r#"{"verdict": "member", "witness": [{"q": 1, "num": [[0, "1"]]}, {"q": 1, "num": [[0, "1"]]}]}"#);
    let out = run(&["verify", "-i", s(&inst), "-p", s(&point), "-w", s(&bad)]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["valid"], false);
}

#[test]
fn oracle_verdicts_and_guard() {
    let dir = TempDir::new().unwrap();
    let inst = write(dir.path(), "e1.json", E1);
    let yes = write(dir.path(), "yes.json", r#"{"v": ["3", "-1"]}"#);
    let no = write(dir.path(), "no.json", r#"{"v": ["1", "0"]}"#);
    let out = run(&["oracle", "-i", s(&inst), "-p", s(&yes)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "member");
    assert_eq!(code(&run(&["oracle", "-i", s(&inst), "-p", s(&no)])), 3);
    assert_eq!(code(&run(&["oracle", "-i", s(&inst), "-p", s(&yes), "--max-cols", "2"])), 2);
}

#[test]
fn gen_then_check_planted_member() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("inst.json");
    let point = dir.path().join("point.json");
    let out = run(&[
        "gen", "--seed", "7", "--m", "2", "--n", "4", "--member", "--grid-den", "2", "-i", s(&inst), "-p", s(&point),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&run(&["check", "-i", s(&inst), "-p", s(&point)])), 0);
    // same seed, same bytes
    let again = run(&["gen", "--seed", "7", "--m", "2", "--n", "4", "--member", "--grid-den", "2"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap().trim(), fs::read_to_string(&inst).unwrap().trim());
    assert_eq!(code(&run(&["gen", "--seed", "1", "--m", "5", "--n", "2"])), 2);
}

#[test]
fn bench_writes_table() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("out.csv");
    let out = run(&["bench", "--sizes", "4,6", "--oracle-sizes", "3", "--reps", "1", "--seed", "2", "-o", s(&csv)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,decide_ms,oracle_ms");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("3,1,"));
    assert!(!text.contains("skipped"));
    let out = run(&["bench", "--sizes", "14", "--oracle-sizes", "14", "--reps", "1", "-o", s(&csv)]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&csv).unwrap().contains("skipped"));
}
