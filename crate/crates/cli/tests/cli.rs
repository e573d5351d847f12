use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn splitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitlab"))
        .args(args)
        .env_remove("SPLITLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn r_under_defaults() {
    let o = splitlab(&["r", "--n", "2000"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn member_and_separator() {
    // "100" encodes a satisfiable one-variable formula; r(3) = 2 puts it in A
    assert_eq!(stdout(&splitlab(&["member", "--part", "A", "--x", "100"])).trim(), "true");
    assert_eq!(stdout(&splitlab(&["member", "--part", "B", "--x", "100"])).trim(), "false");
    assert_eq!(stdout(&splitlab(&["member-d", "--x", "100"])).trim(), "true");
    assert_eq!(stdout(&splitlab(&["member", "--part", "A", "--x", "0101"])).trim(), "false");
}

#[test]
fn member_d_needs_two_parts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("k3.cfg");
    std::fs::write(&cfg, "k = 3\n").unwrap();
    let o = splitlab(&["--config", cfg.to_str().unwrap(), "member-d", "--x", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn trace_formats() {
    let cfg = fixtures().join("accelerated.cfg");
    let cfg = cfg.to_str().unwrap();
    let text = stdout(&splitlab(&["--config", cfg, "trace", "--upto", "100"]));
    assert!(text.starts_with("# splitlab r-table v1\n"));
    assert!(text.contains("enumeration=roster") && text.contains("depth=half-log2"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 101);

    let csv = stdout(&splitlab(&["--config", cfg, "trace", "--upto", "100", "--only-advanced", "--format", "csv"]));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows, ["64,2,true,false,1,1,3,100,12,0", "65,3,true,false,1,0,3,100,12,0"]);
}

#[test]
fn cache_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("t.rtable");
    let cfg = fixtures().join("accelerated.cfg");
    let args = ["--config", cfg.to_str().unwrap(), "--cache", cache.to_str().unwrap(), "r", "--n", "300"];
    assert_eq!(stdout(&splitlab(&args)).trim(), "4");
    let saved = std::fs::read_to_string(&cache).unwrap();
    assert!(saved.lines().any(|l| l.starts_with("300 4 ")));
    assert_eq!(stdout(&splitlab(&args)).trim(), "4");

    // the same cache under another configuration is ignored with a warning
    let o = splitlab(&["--cache", cache.to_str().unwrap(), "r", "--n", "50"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
    assert!(String::from_utf8_lossy(&o.stderr).contains("ignoring cache"));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_splitlab"))
        .args(["r", "--n", "40"])
        .env("SPLITLAB_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
}

#[test]
fn compose_prints_both_stages() {
    let o = splitlab(&["compose", "--x", "100"]);
    let out = stdout(&o);
    assert!(out.contains("f(x) = 1111"), "{out}");
    assert!(out.contains("g(f(x)) = 1"));
    assert!(out.contains("chi_S(x) = 1"));
    let out = stdout(&splitlab(&["compose", "--x", "01"]));
    assert!(out.contains("f(x) = 001") && out.contains("chi_S(x) = 0"), "{out}");
}

#[test]
fn verification_exit_status() {
    let o = splitlab(&["compose-verify", "--maxlen", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS g(f(x)) = 1 iff x in S"));
    let o = splitlab(&["verify", "--suite", "gate-oracle", "--gate-max-i", "500"]);
    assert!(o.status.success());
    let o = splitlab(&["verify", "--suite", "nonesuch"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cnf_tools() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_splitlab"))
        .arg("encode-cnf")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"c x1\np cnf 1 1\n1 0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let code = stdout(&o).trim().to_owned();
    assert_eq!(code, "1011100");
    assert_eq!(stdout(&splitlab(&["sat", "--y", &code])).trim(), "true");
    assert_eq!(stdout(&splitlab(&["decode", "--y", &code])), "p cnf 1 1\n1 0\n");
    assert_eq!(splitlab(&["decode", "--y", "0"]).status.code(), Some(1));
    assert_eq!(splitlab(&["sat", "--y", "01x"]).status.code(), Some(2));
}

#[test]
fn roster_flags() {
    let roster = fixtures().join("roster-copier.txt");
    let o = splitlab(&["--roster-file", roster.to_str().unwrap(), "trace", "--upto", "4"]);
    assert!(stdout(&o).contains("enumeration=roster"));
    let o = splitlab(&["--enumeration", "roster", "r", "--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
}
