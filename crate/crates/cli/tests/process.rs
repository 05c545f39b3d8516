//! Runs the built binary to check exit codes and the limit variable.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], limit: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_novikov-lab"));
    cmd.args(args).env_remove(novikov_lab::LIMIT_ENV);
    if let Some(l) = limit {
        cmd.env(novikov_lab::LIMIT_ENV, l);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn success_prints_report() {
    let f = fixture("z2_point.json");
    let out = run(&["equivariant", f.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("dims: (1, 0, 0)"));
}

#[test]
fn environment_limit_applies_and_flag_wins() {
    let f = fixture("hexagon_rotation.json");
    let f = f.to_str().unwrap();
    let capped = run(&["equivariant", f, "--degree", "1"], Some("50"));
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("ResourceLimit"));
    let lifted = run(&["equivariant", f, "--degree", "1", "--limit", "100000"], Some("50"));
    assert_eq!(lifted.status.code(), Some(0));
    let bad = run(&["equivariant", f], Some("lots"));
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["novikov", "/nonexistent/problem.json"], None).status.code(), Some(1));
    let f = fixture("z2_point.json");
    let out = run(&["novikov", f.to_str().unwrap(), "--rank-engine", "nope"], None);
    assert_eq!(out.status.code(), Some(1));
    let help = run(&["--help"], None);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("equivariant"));
}

#[test]
fn rank_engines_agree_through_the_cli() {
    let f = fixture("torus_twisted.json");
    let f = f.to_str().unwrap();
    let names = novikov_core::exactalg::rank_engine_names();
    let reports: Vec<Vec<u8>> = names
        .iter()
        .map(|n| run(&["novikov", f, "--jumps", "--rank-engine", n], None).stdout)
        .collect();
    assert!(names.len() >= 2);
    assert!(reports.windows(2).all(|w| w[0] == w[1]));
}
