//! End-to-end tests of the `epsilon` binary: exit codes, output shapes, and
//! determinism of the file-facing surfaces.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_epsilon"))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_accepts_a_generated_derivation() {
    let file = corpus_dir().join("neq_2_4.drv");
    let out = run(&["check", "--regime", "strict", file.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn check_reports_line_and_reason() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.drv");
    fs::write(&path, "ax:id-refl 0 = 0\nax:id-refl 0' = 0'\nmp:1,2 0 = 0\n").unwrap();
    let out = run(&["check", "--regime", "strict", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "line 3: bad-mp-shape\n");
}

#[test]
fn solve_writes_a_one_step_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.tsv");
    let file = corpus_dir().join("ideal_single_eps.drv");
    let out = run(&["solve", file.to_str().unwrap(), "--trace", trace.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("solved in 1 steps"));
    let tsv = fs::read_to_string(&trace).unwrap();
    assert_eq!(tsv.lines().count(), 2, "header plus one step:\n{tsv}");
    assert!(tsv.lines().nth(1).unwrap().contains("\t3\t"), "{tsv}");
}

#[test]
fn solve_emits_a_checkable_real_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let real = dir.path().join("real.drv");
    let file = corpus_dir().join("ideal_two_eps.drv");
    let out = run(&["solve", file.to_str().unwrap(), "--emit-real", real.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["check", "--regime", "extended", real.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn ord_cmp_prints_the_comparison() {
    let out = run(&["ord", "cmp", "w*1+6", "w*2+1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "<\n");
    let out = run(&["ord", "cmp", "w + w", "w*2"]);
    assert_eq!(stdout(&out), "=\n");
    let out = run(&["ord", "cmp", "w^w", "w^3*9 + 44"]);
    assert_eq!(stdout(&out), ">\n");
}

#[test]
fn translate_prints_quantifier_free_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, "Ex x x = 0\nAll x x = x\n").unwrap();
    let out = run(&["translate", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "eps x (x = 0) = 0\neps x (~ x = x) = eps x (~ x = x)\n"
    );
}

#[test]
fn eval_prints_truth_values_and_term_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(
        &path,
        "(0'=0' -> ~(0'''=0'' | 0'<0))\n(0''''' + 0''''''')\n~ 0 = 0\n",
    )
    .unwrap();
    let out = run(&["eval", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "true\n12\nfalse\n");
}

#[test]
fn corpus_run_passes_on_the_shipped_corpus() {
    let out = run(&["corpus", corpus_dir().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report = stdout(&out);
    let mut lines = report.lines();
    assert_eq!(lines.next(), Some("name\toutcome\tsteps\tmax-ordinal-tag\twall-time-ms"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 34, "corpus has {} entries", rows.len());
    for row in &rows {
        assert_eq!(row.split('\t').nth(1), Some("pass"), "{row}");
    }
}

#[test]
fn corpus_reports_corrupted_files_without_crashing() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ok.drv"), "ax:id-refl 0 = 0\n").unwrap();
    fs::write(dir.path().join("broken.drv"), "ax:id-refl this is not a formula\n").unwrap();
    fs::write(
        dir.path().join("manifest.tsv"),
        "ok\tok.drv\tstrict\tchecks\nbroken\tbroken.drv\tstrict\tchecks\nmissing\tnope.drv\tstrict\tchecks\n",
    )
    .unwrap();
    let out = run(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.contains("ok\tpass"), "{report}");
    assert!(report.contains("broken\terror"), "{report}");
    assert!(report.contains("missing\terror"), "{report}");
}

#[test]
fn outputs_are_deterministic() {
    let first = run(&["transform", "neq", "2", "4", "--weights"]);
    let second = run(&["transform", "neq", "2", "4", "--weights"]);
    assert_eq!(first.stdout, second.stdout);

    let dir = tempfile::tempdir().unwrap();
    let t1 = dir.path().join("t1.tsv");
    let t2 = dir.path().join("t2.tsv");
    let file = corpus_dir().join("ideal_rank1_three.drv");
    run(&["solve", file.to_str().unwrap(), "--trace", t1.to_str().unwrap()]);
    run(&["solve", file.to_str().unwrap(), "--trace", t2.to_str().unwrap()]);
    assert_eq!(fs::read(&t1).unwrap(), fs::read(&t2).unwrap());
}

#[test]
fn budget_env_var_and_flag_precedence() {
    let file = corpus_dir().join("ideal_single_eps.drv");
    let out = bin()
        .args(["solve", file.to_str().unwrap()])
        .env("ESUBST_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("budget exhausted"), "{}", stdout(&out));

    // An explicit flag wins over the environment.
    let out = bin()
        .args(["solve", file.to_str().unwrap(), "--budget", "10"])
        .env("ESUBST_BUDGET", "0")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn budget_config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("esubst.conf");
    fs::write(&cfg, "# solver settings\nbudget = 0\n").unwrap();
    let file = corpus_dir().join("ideal_single_eps.drv");
    let out = run(&[
        "solve",
        file.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("budget exhausted"));
}

#[test]
fn parse_round_trips_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, "(0''*(0''+0'''))=0\n").unwrap();
    let out = run(&["parse", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(0'' * (0'' + 0''')) = 0\n");
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["check", "--regime", "bogus", "whatever.drv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["eval", "/nonexistent/path.txt"]);
    assert_eq!(out.status.code(), Some(2));
}
