use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn repext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repext")).args(args).output().expect("run repext")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_free_path_is_extendible() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "g.txt", "3 2\na b\nb c\n");
    let r = write(d.path(), "r.txt", "");
    let o = repext(&["check", &g, &r]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "RESULT extendible\n");
}

#[test]
fn extend_on_four_cycle_gives_lb() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "g.txt", "4 4\na b\nb c\nc d\nd a\n");
    let r = write(d.path(), "r.txt", "");
    let o = repext(&["extend", &g, &r]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert!(out.starts_with("RESULT not-interval\nOBSTRUCTION LB"), "{out}");
}

#[test]
fn extend_then_verify_round_trips() {
    let d = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[&["SE"], &["kFAT", "--k", "3"], &["kBI", "--k", "2", "--variant", "1"], &["kFNS", "--k", "2"], &["klCE", "--k", "2", "--l", "1", "--variant", "2"]];
    for (i, args) in cases.iter().enumerate() {
        let dir = d.path().join(format!("c{i}"));
        let dir_s = dir.to_string_lossy().into_owned();
        let mut gen = vec!["gen"];
        gen.extend_from_slice(args);
        gen.extend(["--out", &dir_s]);
        assert_eq!(code(&repext(&gen)), 0, "{args:?}");
        let g = dir.join("graph.txt").to_string_lossy().into_owned();
        let r = dir.join("partrep.txt").to_string_lossy().into_owned();
        let ext = repext(&["extend", &g, &r]);
        assert_eq!(code(&ext), 1, "{args:?}");
        let c = write(&dir, "solver.txt", &stdout(&ext));
        let v = repext(&["verify", &g, &r, &c]);
        assert_eq!(code(&v), 1, "{args:?}: {}", String::from_utf8_lossy(&v.stderr));
        let own = dir.join("cert.txt").to_string_lossy().into_owned();
        assert_eq!(code(&repext(&["verify", &g, &r, &own])), 1, "{args:?}");
        assert_eq!(code(&repext(&["oracle", &g, &r])), 1, "{args:?}");
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("fat");
    let dir_s = dir.to_string_lossy().into_owned();
    assert_eq!(code(&repext(&["gen", "kFAT", "--k", "2", "--out", &dir_s])), 0);
    let g = dir.join("graph.txt").to_string_lossy().into_owned();
    let r = dir.join("partrep.txt").to_string_lossy().into_owned();
    let cert = fs::read_to_string(dir.join("cert.txt")).unwrap();
    let bad = write(&dir, "bad.txt", &cert.replace("k=2", "k=1"));
    let o = repext(&["verify", &g, &r, &bad]);
    assert_eq!(code(&o), 70);
    assert!(!o.stderr.is_empty());
}

#[test]
fn flip_keeps_the_decision() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("bi");
    let dir_s = dir.to_string_lossy().into_owned();
    assert_eq!(code(&repext(&["gen", "kBI", "--k", "1", "--variant", "3", "--out", &dir_s])), 0);
    let g = dir.join("graph.txt").to_string_lossy().into_owned();
    let r = dir.join("partrep.txt").to_string_lossy().into_owned();
    let plain = repext(&["extend", &g, &r]);
    let flipped = repext(&["--flip", "extend", &g, &r]);
    assert_eq!(code(&plain), code(&flipped));
    let head = |o: &Output| stdout(o).lines().nth(1).unwrap().split(' ').nth(1).unwrap().to_string();
    assert_eq!(head(&plain), head(&flipped));
}

#[test]
fn usage_and_format_errors() {
    assert_eq!(code(&repext(&["frobnicate"])), 64);
    assert_eq!(code(&repext(&["gen", "NOPE"])), 64);
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "g.txt", "3 5\na b\n");
    let r = write(d.path(), "r.txt", "");
    assert_eq!(code(&repext(&["check", &g, &r])), 65);
    let g = write(d.path(), "g2.txt", "2 1\na b\n");
    let r = write(d.path(), "r2.txt", "a 0 1\nb 2 3\n");
    assert_eq!(code(&repext(&["check", &g, &r])), 65);
    let missing = d.path().join("nope.txt").to_string_lossy().into_owned();
    assert_eq!(code(&repext(&["check", &missing, &missing])), 65);
}

#[test]
fn dump_mpq_goes_to_stderr() {
    let d = tempfile::tempdir().unwrap();
    let g = write(d.path(), "g.txt", "4 3\na b\nb c\nc d\n");
    let r = write(d.path(), "r.txt", "b 0 1\n");
    let o = repext(&["--dump-mpq", "check", &g, &r]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Q sections="));
}

#[test]
fn sweep_reports_no_mismatches() {
    let o = repext(&["sweep", "--max-n", "4", "--max-predrawn", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("mismatches 0"), "{}", stdout(&o));
    let a = repext(&["--seed", "9", "sweep", "--max-n", "5", "--max-predrawn", "2", "--sample", "200"]);
    assert!(stdout(&a).starts_with("instances 200 "));
}

#[test]
fn gen_output_is_deterministic() {
    let a = repext(&["gen", "kFDS", "--k", "2"]);
    let b = repext(&["gen", "kFDS", "--k", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("# cert.txt\nRESULT non-extendible"));
}
