use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubtwist")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn twist_value_from_config() {
    let o = run(&["twist-value", "--curve", &config("37b.toml"), "--character", "(7; 7:1)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "label,f,character-id,Re L,Im L,err,S-vector,decision");
    let row = lines.next().unwrap();
    assert!(row.contains("[-1 -1 -1]") && row.ends_with(",vanishes"), "{row}");
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "label=\"x\"\na_invariants=[0,1,1,-3,1]\nconductor=37\nroot_number=-1\n").unwrap();
    let o = run(&["twist-value", "--curve", bad.to_str().unwrap(), "--character", "(7; 7:1)"]);
    assert_eq!(o.status.code(), Some(1));

    let unknown = dir.path().join("unknown.toml");
    std::fs::write(&unknown, "label=\"x\"\na_invariants=[0,1,1,-3,1]\nconductor=37\nroot_number=1\nrank=0\n").unwrap();
    let o = run(&["census", "--curve", unknown.to_str().unwrap(), "--max-conductor", "20"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(run(&["census", "--max-conductor", "20", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["census"]).status.code(), Some(1));
    assert_eq!(run(&["twist-value", "--character", "(8; 8:1)"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn congruence_alarm_exits_two() {
    let ok = run(&["congruence", "--max-conductor", "60"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["congruence", "--max-conductor", "60", "--corrupt-ap", "7:0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("FAIL"));
}

fn census(out: &Path, threads: &str, extra: &[&str]) -> Output {
    let mut args = vec!["census", "--max-conductor", "150", "--threads", threads, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn census_deterministic_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let a: PathBuf = dir.path().join("a.csv");
    let b: PathBuf = dir.path().join("b.csv");
    let o = census(&a, "1", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vanishes:"));
    assert_eq!(census(&b, "4", &[]).status.code(), Some(0));
    let full = std::fs::read(&a).unwrap();
    assert_eq!(full, std::fs::read(&b).unwrap());

    let c = dir.path().join("c.csv");
    assert_eq!(census(&c, "2", &["--limit", "4"]).status.code(), Some(0));
    assert_eq!(census(&c, "2", &["--resume"]).status.code(), Some(0));
    assert_eq!(full, std::fs::read(&c).unwrap());

    let r = run(&["report", a.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).contains("orbits:"));
}

#[test]
fn other_subcommands_run() {
    let o = run(&["nonvanishing-set", "--curve", "11A", "--max-conductor", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["kummer-fiber", "--curve", &config("37b_shifted.toml"), "--height-bound", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7/9"));
    let o = run(&["family", "--kind", "six-torsion", "--lambda", "2,-1/2", "--height-bound", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["e37b", "--max-conductor", "2000", "--height-bound", "20", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
