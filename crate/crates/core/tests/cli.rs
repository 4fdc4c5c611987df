use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covering-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tau_of_an_incidence_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.txt");
    let matrix = stdout(&run(&["catalog", "fano"]));
    fs::write(&path, matrix).unwrap();
    let out = run(&["tau", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("tau=3\n"));
}

#[test]
fn check_cover_reports_and_exits() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blocks.txt");
    // the Fano plane with labels shifted by ten
    fs::write(&path, "10 11 12\n10 13 14\n10 15 16\n11 13 15\n11 14 16\n12 13 16\n12 14 15\n").unwrap();
    let file = path.to_str().unwrap();
    let ok = run(&["check-cover", file, "10,11,12"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "valid 3-cover");
    assert!(String::from_utf8_lossy(&ok.stderr).contains("10 -> 0"));
    let bad = run(&["check-cover", file, "10,11"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = run(&["check-cover", file, "3"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn descend_three_prints_m_four() {
    let out = run(&["descend", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().last(), Some("m(4)=10"));
}

#[test]
fn gen_prints_a_tsv_table() {
    let out = run(&["--format", "tsv", "gen", "3", "1", "5-6", "4-5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n\\m\t4\t5\n5\t5/0\t6/0\n6\t9/0\t18/0\n");
}

#[test]
fn descend_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().to_str().unwrap();
    let out = run(&["descend", "3", "--min-edges", "11", "--checkpoint", ckpt]);
    assert!(out.status.success());
    let level = dir.path().join("level-11.txt");
    assert!(level.exists());
    let resumed = run(&["descend", "3", "--resume", level.to_str().unwrap()]);
    assert!(resumed.status.success());
    assert_eq!(stdout(&resumed).lines().last(), Some("m(4)=10"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "3"]).status.code(), Some(1));
    assert_eq!(run(&["descend", "6"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn catalog_list_names_entries() {
    let out = run(&["catalog", "--list"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("q4_unique: n=11 m=9 r=4 t=1 tau=4"));
}
