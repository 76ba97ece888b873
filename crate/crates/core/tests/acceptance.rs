//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! lines appear in order; any failure exits non-zero.

use std::io::Write;
use std::process::{Command, ExitCode, Output};

use tiltkit::battery::{self, DEFAULT_SEED, SUITES};

fn tiltkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltkit")).args(args).output().expect("binary runs")
}

fn write_session(dir: &std::path::Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

/// Process-level half of criterion 10.
fn cli_contracts() -> Vec<String> {
    let mut failures = Vec::new();
    let seed = DEFAULT_SEED.to_string();
    let a = tiltkit(&["test-battery", "--seed", &seed]);
    let b = tiltkit(&["test-battery", "--seed", &seed]);
    if a.stdout != b.stdout || a.stdout.is_empty() {
        failures.push("battery JSON differs between runs".into());
    }
    if a.status.code() != Some(0) {
        failures.push(format!("test-battery exit {:?}", a.status.code()));
    }
    if !serde_json::from_slice::<serde_json::Value>(&a.stdout).is_ok_and(|v| v["passed"] == true) {
        failures.push("battery JSON missing passed=true".into());
    }

    let dir = tempfile::tempdir().unwrap();
    let good = write_session(dir.path(), "good.dsl", "ring R = QQ[x,y];\nideal I = (x,y) in R;\ngrade I R;\n");
    let r1 = tiltkit(&["run", &good, "--json"]);
    let r2 = tiltkit(&["run", &good, "--json"]);
    if r1.status.code() != Some(0) {
        failures.push(format!("good session exit {:?}", r1.status.code()));
    }
    if r1.stdout != r2.stdout {
        failures.push("session JSON differs between runs".into());
    }

    let bad = write_session(dir.path(), "bad.dsl", "ring R = QQ[x,y];\nideal I = (x,,y) in R;\n");
    let r = tiltkit(&["run", &bad]);
    if r.status.code() != Some(2) {
        failures.push(format!("parse error exit {:?}", r.status.code()));
    }
    match serde_json::from_slice::<serde_json::Value>(&r.stdout) {
        Ok(v) if v["line"] == 2 && v["column"] == 14 => {}
        other => failures.push(format!("parse error JSON {other:?}")),
    }

    let comp = write_session(dir.path(), "comp.dsl", "ring R = QQ[x];\nideal I = (x) in R;\next I R 9;\n");
    let r = tiltkit(&["run", &comp]);
    if r.status.code() != Some(1) {
        failures.push(format!("computation error exit {:?}", r.status.code()));
    }
    failures
}

fn main() -> ExitCode {
    let mut all = true;
    let mut out = std::io::stdout().lock();
    for k in 0..SUITES.len() {
        let mut c = battery::run_suite(DEFAULT_SEED, k);
        if c.id == 10 {
            c.failures.extend(cli_contracts());
            c.passed = c.failures.is_empty();
        }
        all &= c.passed;
        writeln!(out, "[{}] criterion {:>2} {} ({} cases)", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.cases).unwrap();
        for f in &c.failures {
            writeln!(out, "       {f}").unwrap();
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
