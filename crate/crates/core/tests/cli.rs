use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tiltkit::session::{RunOptions, Session};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn tiltkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltkit")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn check_record(r: &Value) {
    let obj = r.as_object().expect("record is an object");
    for key in ["command", "status", "payload", "citations"] {
        assert!(obj.contains_key(key), "missing {key} in {r}");
    }
    assert!(r["command"].is_string());
    assert!(r["citations"].as_array().is_some_and(|c| c.iter().all(Value::is_string)));
    match r["status"].as_str() {
        Some("ok") => assert!(!obj.contains_key("code")),
        Some("error") => assert!(r["code"].is_string() && r["message"].is_string()),
        s => panic!("bad status {s:?}"),
    }
}

#[test]
fn algebra_session_json() {
    let out = tiltkit(&["run", &data("algebra.dsl"), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["seed"], 7);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 11);
    results.iter().for_each(check_record);

    let by = |cmd: &str| results.iter().find(|r| r["command"] == cmd).unwrap_or_else(|| panic!("{cmd}"));
    assert_eq!(by("groebner G")["payload"]["basis"], serde_json::json!(["x^2 - y", "x*y - 1", "y^2 - x"]));
    let g = &by("grade I R")["payload"];
    assert_eq!((g["grade"].clone(), g["koszul_side"].clone(), g["ext_side"].clone()), (2.into(), 2.into(), 2.into()));
    assert_eq!(by("grade J M bound 3")["payload"]["grade"], 0);
    assert_eq!(by("compare I R 2")["payload"]["verdict"]["iso"], true);
    assert_eq!(by("thomason X <= I")["payload"]["contained"], false);
    assert_eq!(by("thomason {I, J} <= X")["payload"]["contained"], true);
}

#[test]
fn classes_session_json() {
    let out = tiltkit(&["run", &data("classes.dsl")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    results.iter().for_each(check_record);
    assert_eq!(results[0]["payload"]["valid"], true);
    assert_eq!(results[1]["payload"]["valid"], false);
    let f = &results[1]["payload"]["failures"];
    assert_eq!(f.as_array().unwrap().len(), 1);
    assert_eq!((f[0]["i"].clone(), f[0]["ideal"].clone(), f[0]["j"].clone()), (1.into(), "(x)".into(), 1.into()));
    assert_eq!(results[3]["payload"]["member"], false);
    assert_eq!(results[4]["payload"]["member"], true);
}

#[test]
fn pretty_output() {
    let out = tiltkit(&["run", &data("classes.dsl"), "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("validate T\n  valid\nvalidate U\n  invalid: (1, (x), 1)\n"), "{text}");
}

#[test]
fn parse_error_contract() {
    let out = tiltkit(&["run", &data("parse_error.dsl")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "error");
    assert_eq!(v["code"], "parse-error");
    assert_eq!((v["line"].clone(), v["column"].clone()), (3.into(), 21.into()));

    let out = tiltkit(&["run", &data("parse_error.dsl"), "--pretty"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse_error.dsl:3:21:"));
}

#[test]
fn computation_error_contract() {
    let out = tiltkit(&["run", &data("computation_error.dsl")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "error");
    let results = v["results"].as_array().unwrap();
    results.iter().for_each(check_record);
    assert_eq!(results[0]["status"], "ok");
    assert_eq!(results[1]["status"], "error");
    assert_eq!(results[1]["code"], "resolution-too-short");
}

#[test]
fn missing_file_and_options() {
    let out = tiltkit(&["run", &data("no_such_file.dsl")]);
    assert_eq!(out.status.code(), Some(1));
    let out = tiltkit(&["run", &data("computation_error.dsl"), "--resolution-length", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let out = tiltkit(&["run", &data("algebra.dsl"), "--json", "--pretty"]);
    assert_eq!(out.status.code(), Some(2), "conflicting flags are a usage error");
}

#[test]
fn sessions_round_trip() {
    for name in ["algebra.dsl", "classes.dsl", "computation_error.dsl"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let a = Session::parse(&text).unwrap();
        let canon = a.serialize();
        let b = Session::parse(&canon).unwrap();
        assert_eq!(canon, b.serialize(), "{name}");
        let opts = RunOptions::default();
        let ra = serde_json::to_string(&a.run_all(&opts)).unwrap();
        let rb = serde_json::to_string(&b.run_all(&opts)).unwrap();
        assert_eq!(ra, rb, "{name}");
    }
}
