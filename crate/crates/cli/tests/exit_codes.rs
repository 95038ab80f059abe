use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topdesign"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn decide_codes() {
    assert_eq!(code(&["decide", "odd_tail.query"]), 0);
    assert_eq!(code(&["decide", "embed_fail.query"]), 1);
    let out = run(&["decide", "missing_cosize.query"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("C.cosize"));
    assert_eq!(code(&["decide", "no_such_file.query"]), 2);
}

#[test]
fn decide_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_topdesign"))
        .args(["--format", "text", "decide", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let query = std::fs::read_to_string(fixtures().join("boundary.query")).unwrap();
    child.stdin.take().unwrap().write_all(query.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("exists: false\ncase_tag: c1-bound\nreason: "), "{text}");
}

#[test]
fn verify_codes() {
    assert_eq!(code(&["verify", "odd_tail.query", "fin:0,2", "fin:3,9"]), 0);
    // A three-point probe is not a copy of the two-point C.
    assert_eq!(code(&["verify", "odd_tail.query", "fin:0,2,4"]), 2);
    assert_eq!(code(&["verify", "odd_tail.query", "fin:2,0"]), 2);
    assert_eq!(code(&["verify", "boundary.query", "fin:0,5", "fin:5,6"]), 2);
    assert_eq!(code(&["verify", "boundary.query", "fin:0,5", "fin:5,6", "--witness", "w"]), 1);
    // W(D) of an infinite, co-infinite D has no bounded enumeration.
    assert_eq!(code(&["verify", "embed_fail.query", "cofin:1", "--witness", "w"]), 2);
}

#[test]
fn crosscheck_codes() {
    let out = run(&["--format", "text", "crosscheck"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 violations / 1690 cases\n");
    assert_eq!(code(&["crosscheck", "--finite-only"]), 0);
    assert_eq!(code(&["crosscheck", "--grid-max-aleph", "aleph2", "--grid-max-finite", "3"]), 0);
    assert_eq!(code(&["crosscheck", "--inject-fault"]), 1);
}

#[test]
fn brute_codes() {
    let out = run(&["--format", "text", "brute", "matching4.inst"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "Exactly(1)\n");
    let out = run(&["--format", "text", "brute", "unbalanced6.inst"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "NonUniform({0,1} in 3, {0,3} in 4)\n");
    assert_eq!(code(&["brute", "odd_tail.query"]), 2);
    assert_eq!(code(&["brute", "triples7.inst", "--type", "5"]), 2);
    for ty in ["1", "2", "3", "4"] {
        assert_eq!(code(&["brute", "triples7.inst", "--type", ty]), 0);
    }
}
