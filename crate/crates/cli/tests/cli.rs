use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn extmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extmod")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build_to(dir: &Path, name: &str, extra: &[&str]) -> (Output, std::path::PathBuf) {
    let path = dir.join(name);
    let mut args = vec!["build", "--weights", "2,3,7", "--arms", "1,2,3", "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    (extmod(&args), path)
}

#[test]
fn info_reports_euler_characteristic() {
    let o = extmod(&["info", "--weights", "2,3,7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("chi\t-1/42"), "{out}");
    assert!(out.contains("type\twild"));
    assert!(out.contains("vertices\t11"));
    assert!(out.contains("vdom\t0;0,1,5"));
    let o = extmod(&["info", "--weights", "2,3,6"]);
    assert!(stdout(&o).contains("chi\t0\ntype\ttubular"));
    assert_eq!(extmod(&["info", "--weights", "2,2"]).status.code(), Some(2));
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (o, path) = build_to(dir.path(), "a.json", &["--y", "0;0,0,0", "--powers", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("case\tA"));
    assert!(out.contains("rank\t2"));
    assert!(out.contains("methods agree"));
    let v = extmod(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn cokernel_method_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let (o, _) = build_to(dir.path(), "b.json", &["--y", "0;0,2,3", "--powers", "1,1,4", "--method", "cokernel"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("case\tC1"));
    assert!(out.contains("reduction\tC1 -> A"));
    assert!(out.contains("methods agree"));
}

#[test]
fn builds_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--y", "1;0,1,3", "--powers", "1,1,4"];
    let (_, p1) = build_to(dir.path(), "1.json", &args);
    let (_, p2) = build_to(dir.path(), "2.json", &args);
    assert_eq!(std::fs::read(p1).unwrap(), std::fs::read(p2).unwrap());
}

#[test]
fn invalid_datum_is_an_input_error() {
    let o = extmod(&["build", "--weights", "2,3,7", "--y", "0;0,0,0", "--arms", "1,2,3", "--powers", "1,1,9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = extmod(&["build", "--weights", "2,3,7", "--y", "-3;0,0,0", "--arms", "1,2,3", "--powers", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = extmod(&[
        "build",
        "--weights",
        "2,3,7",
        "--y",
        "0;0,0,0",
        "--arms",
        "1,2,3",
        "--powers",
        "1,1,1",
        "--method",
        "fast",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn perturbed_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let (_, path) = build_to(dir.path(), "c.json", &["--y", "1;0,0,0", "--powers", "1,1,1"]);
    let mut json: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let entry = &mut json["matrices"]["a1@1"][0];
    let bumped = if entry == "1/1" { "2/1" } else { "1/1" };
    *entry = Value::from(bumped);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&json).unwrap()).unwrap();
    let o = extmod(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("relation"), "{}", stdout(&o));
}

#[test]
fn malformed_files_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (_, path) = build_to(dir.path(), "d.json", &["--y", "0;0,0,0", "--powers", "1,1,1"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(extmod(&["verify", truncated.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("none.json");
    assert_eq!(extmod(&["verify", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn latex_export() {
    let o = extmod(&[
        "build",
        "--weights",
        "2,2,2,3",
        "--y",
        "1;0,0,0,0",
        "--arms",
        "2,3,4",
        "--powers",
        "1,1,2",
        "--format",
        "latex",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\\begin{pmatrix}"));
    assert!(out.contains("\\lambda_{4}"), "{out}");
}

#[test]
fn higher_rank_build() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let o = extmod(&[
        "build",
        "--weights",
        "2,2,2,3",
        "--y",
        "0;0,0,0,0",
        "--arms",
        "1,2,3,4",
        "--powers",
        "1,1,1,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank\t3"));
    assert_eq!(extmod(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
    let o = extmod(&[
        "build",
        "--weights",
        "2,2,2,3",
        "--y",
        "0;0,0,0,0",
        "--arms",
        "1,2,3,4",
        "--powers",
        "1,1,1,1",
        "--method",
        "closed",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_writes_summary_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let o = extmod(&["sweep", "--weights", "2,2,2,3", "--max-c", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let summary = std::fs::read_to_string(out.join("summary.tsv")).unwrap();
    let rows = summary.lines().count() - 1;
    assert!(rows > 0);
    assert!(summary.lines().skip(1).all(|l| l.contains("\tpass\t")));
    assert!(stdout(&o).contains(&format!("total\t{rows}")));
    let hist = std::fs::read_to_string(out.join("histogram.tsv")).unwrap();
    assert_eq!(hist.lines().count(), 9);
    assert!(out.join("datum-00000.json").exists());
    assert!(std::fs::read_dir(&out).unwrap().all(|e| !e.unwrap().file_name().to_string_lossy().ends_with(".tmp")));
}

#[test]
fn empty_sweep_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty");
    let o = extmod(&["sweep", "--weights", "2,3,7", "--max-c", "-1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total\t0"));
}
