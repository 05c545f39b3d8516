//! Golden-report harness shared by the golden and acceptance tests.

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(fixtures().join("cases.json")).expect("manifest");
    serde_json::from_str(&text).expect("manifest parses")
}

/// Runs one case in-process; arguments naming a `.json` file are resolved
/// against the fixture directory.
pub fn render(case: &Case) -> (i32, String) {
    let dir = fixtures();
    let mut argv = vec!["novikov-lab".to_string()];
    argv.extend(case.args.iter().map(|a| {
        if a.ends_with(".json") {
            dir.join(a).display().to_string()
        } else {
            a.clone()
        }
    }));
    let out = novikov_lab::run(argv, None);
    (out.code, format!("{}{}", out.stdout, out.stderr))
}

pub fn golden_path(case: &Case) -> PathBuf {
    fixtures().join("golden").join(format!("{}.txt", case.name))
}

/// Compares every case against its golden file and returns the mismatches.
/// With `UPDATE_GOLDEN` set the golden files are rewritten instead.
pub fn check_all() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (code, text) = render(&case);
        if code != case.exit {
            failures.push(format!("{}: exit {code}, expected {}\n{text}", case.name, case.exit));
            continue;
        }
        let path = golden_path(&case);
        if update {
            std::fs::write(&path, &text).expect("write golden");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == text => {}
            Ok(expected) => failures.push(format!(
                "{}: report differs from {}\n--- expected\n{expected}--- actual\n{text}",
                case.name,
                path.display()
            )),
            Err(e) => failures.push(format!("{}: {}: {e}", case.name, path.display())),
        }
    }
    failures
}
