use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempocover")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn solve_reports_sizes() {
    let star = json(&run(&["solve", &path("star3.tg"), "--problem", "tdpc"]));
    assert_eq!(star["cover_size"], 5);
    assert_eq!(star["cover"]["mode"], "temporally_disjoint");
    let t4 = json(&run(&["solve", &path("tournament4.tg"), "--problem", "tpc"]));
    assert_eq!(t4["cover_size"], 2);
    assert_eq!(t4["class"], "dag");
}

#[test]
fn tree_and_oracle_agree() {
    for name in ["rooted_single_label.tg", "rooted_multi_label.tg", "star3.tg"] {
        for problem in ["tpc", "tdpc"] {
            let tree = json(&run(&["solve", &path(name), "--problem", problem]));
            let oracle = json(&run(&["solve", &path(name), "--problem", problem, "--method", "oracle"]));
            assert_eq!(tree["cover_size"], oracle["cover_size"], "{name} {problem}");
        }
    }
}

#[test]
fn gap_flags() {
    let star = json(&run(&["gap", &path("star3.tg")]));
    assert_eq!(star["dilworth_holds"], true);
    assert_eq!(star["td_dilworth_holds"], false);
    let rooted = json(&run(&["gap", &path("rooted_multi_label.tg")]));
    assert_eq!(rooted["dilworth_holds"], true);
    assert_eq!(rooted["td_dilworth_holds"], true);
    let t4 = json(&run(&["gap", &path("tournament4.tg")]));
    assert_eq!(t4["antichain"], 1);
    assert_eq!(t4["dilworth_holds"], false);
    assert_eq!(t4["td_dilworth_holds"], false);
}

#[test]
fn generate_and_convert() {
    let out = run(&["generate", "star", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("tg 7 6"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.tg");
    let out = run(&["--seed", "9", "--out", file.to_str().unwrap(), "generate", "random", "oriented_tree", "12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let again = run(&["--seed", "9", "generate", "random", "oriented_tree", "12"]);
    assert_eq!(std::fs::read(&file).unwrap(), again.stdout);

    let dot = run(&["convert", &path("star3.tg"), "--format", "dot"]);
    let dot = String::from_utf8(dot.stdout).unwrap();
    assert_eq!(dot.matches("->").count(), 6);
    let js = json(&run(&["convert", &path("star3.tg"), "--format", "json"]));
    assert_eq!(js["n"], 7);
}

#[test]
fn verify_exit_status() {
    let ok = run(&["verify", &path("tournament4.tg"), &path("tournament4_cover.json")]);
    assert_eq!(ok.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let short = dir.path().join("c.json");
    std::fs::write(&short, r#"{"mode":"plain","paths":[[[0,1,3]]]}"#).unwrap();
    let bad = run(&["verify", &path("tournament4.tg"), short.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn many_files_give_json_lines() {
    let out = run(&["--jobs", "2", "solve", &path("star3.tg"), &path("tournament5.tg")]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("g.tg");
    std::fs::write(&garbage, "garbage\n").unwrap();
    assert_eq!(run(&["solve", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["solve", &path("tournament4.tg"), "--method", "tree"]).status.code(), Some(3));
    let capped = Command::new(env!("CARGO_BIN_EXE_tempocover"))
        .args(["solve", &path("tournament4.tg"), "--method", "oracle"])
        .env("TEMPOCOVER_ORACLE_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("at most 3"));
}
