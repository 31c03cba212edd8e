use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use serde_json::Value;

fn mindec() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mindec"));
    c.env_remove("MINDEC_DEGREE_CAP");
    c
}

fn with_stdin(mut cmd: Command, input: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad stdout ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn write_doc(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn rows(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().to_string())
                .collect()
        })
        .collect()
}

fn strs(rows_: &[&[&str]]) -> Vec<Vec<String>> {
    rows_
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect()
}

#[test]
fn sn_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        dir.path(),
        "id2.json",
        r#"{"order": 2, "entries": [["1","0"],["0","1"]]}"#,
    );
    let out = mindec()
        .args(["sn", "--check", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(rows(&v["S"]), strs(&[&["1", "0"], &["0", "1"]]));
    assert_eq!(rows(&v["N"]), strs(&[&["0", "0"], &["0", "0"]]));
    assert_eq!(v["report"]["pass"], Value::Bool(true));
}

#[test]
fn sn_reads_stdin_and_reports_anchors() {
    let out = with_stdin(
        {
            let mut c = mindec();
            c.args(["sn", "--check"]);
            c
        },
        "[[1,1],[0,1]]",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(rows(&v["N"]), strs(&[&["0", "1"], &["0", "0"]]));
    for check in v["report"]["checks"].as_array().unwrap() {
        assert!(!check["anchor"].as_str().unwrap().is_empty());
        assert_eq!(check["pass"], Value::Bool(true));
    }
}

#[test]
fn gen_then_fine_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = mindec()
        .args(["gen", "--seed", "7", "--minpoly", "(X^2-2)(X-1)^2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["order"], Value::from(4));
    let path = write_doc(
        dir.path(),
        "gen.json",
        &String::from_utf8(out.stdout).unwrap(),
    );
    let fine = mindec()
        .args(["fine", "--check", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(fine.status.code(), Some(0));
    let v = stdout_json(&fine);
    assert_eq!(v["report"]["pass"], Value::Bool(true));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn gen_is_deterministic() {
    let run = |args: &[&str]| mindec().args(args).output().unwrap().stdout;
    let a = run(&["gen", "--seed", "11", "--blocks", "X^2+1; X-3; X-3"]);
    let b = run(&["gen", "--seed", "11", "--blocks", "X^2+1; X-3; X-3"]);
    assert_eq!(a, b);
    assert_ne!(
        a,
        run(&["gen", "--seed", "12", "--blocks", "X^2+1; X-3; X-3"])
    );
    assert_eq!(run(&["gen", "--seed", "5"]), run(&["gen", "--seed", "5"]));
}

#[test]
fn svd_of_nilpotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(dir.path(), "nilpotent.json", r#"[["0","1"],["0","0"]]"#);
    let out = mindec()
        .args(["svd", "--check", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["sigma"], serde_json::json!({"1": "1"}));
}

#[test]
fn cmjc_uses_radicand_objects() {
    let out = with_stdin(
        {
            let mut c = mindec();
            c.args(["cmjc", "--check"]);
            c
        },
        "[[0,-2],[1,0]]",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["pass"], Value::Bool(true));
    assert_eq!(v["Delta"][0][0], serde_json::json!({"2": "1"}));
    assert_eq!(v["radicands"], serde_json::json!([2]));
}

#[test]
fn apply_reports_classes() {
    let out = with_stdin(
        {
            let mut c = mindec();
            c.args(["apply", "--check", "--poly", "X^2"]);
            c
        },
        "[[1,0],[0,-1]]",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(rows(&v["value"]), strs(&[&["1", "0"], &["0", "1"]]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn apply_accepts_coefficient_arrays() {
    let out = with_stdin(
        {
            let mut c = mindec();
            c.args(["apply", "--poly", "[\"1\", \"1\"]"]);
            c
        },
        "[[1,1],[0,1]]",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        rows(&stdout_json(&out)["value"]),
        strs(&[&["2", "1"], &["0", "2"]])
    );
}

#[test]
fn covariants_and_unbreakable() {
    let out = with_stdin(
        {
            let mut c = mindec();
            c.args(["covariants", "--check"]);
            c
        },
        "[[1,0],[0,0]]",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    assert_eq!(v["report"]["pass"], Value::Bool(true));

    let out = with_stdin(
        {
            let mut c = mindec();
            c.args(["unbreakable", "--check"]);
            c
        },
        "[[1,0,0],[0,-1,0],[0,0,0]]",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["components"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let parse = with_stdin(
        {
            let mut c = mindec();
            c.arg("sn");
            c
        },
        "[[1,2],[3",
    );
    assert_eq!(parse.status.code(), Some(2));
    assert_eq!(stderr_json(&parse)["error"]["kind"], "Parse");

    let ragged = with_stdin(
        {
            let mut c = mindec();
            c.arg("sn");
            c
        },
        "[[1,2],[3]]",
    );
    assert_eq!(ragged.status.code(), Some(2));

    let singular = with_stdin(
        {
            let mut c = mindec();
            c.arg("mjc");
            c
        },
        "[[1,1],[1,1]]",
    );
    assert_eq!(singular.status.code(), Some(3));
    assert_eq!(stderr_json(&singular)["error"]["kind"], "SingularMatrix");

    let not_semisimple = with_stdin(
        {
            let mut c = mindec();
            c.arg("unbreakable");
            c
        },
        "[[1,1],[0,1]]",
    );
    assert_eq!(not_semisimple.status.code(), Some(3));

    let missing = mindec()
        .args(["sn", "--input", "/nonexistent/matrix.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let capped = with_stdin(
        {
            let mut c = mindec();
            c.arg("sn").env("MINDEC_DEGREE_CAP", "1");
            c
        },
        "[[0,2],[1,0]]",
    );
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(stderr_json(&capped)["error"]["kind"], "DegreeCapExceeded");

    let bad = with_stdin(
        {
            let mut c = mindec();
            c.arg("sn").env("MINDEC_DEGREE_CAP", "lots");
            c
        },
        "[[1]]",
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn selftest_quick_passes_fast() {
    let start = Instant::now();
    let out = mindec().args(["selftest", "--quick"]).output().unwrap();
    let elapsed = start.elapsed();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["report"]["pass"], Value::Bool(true));
    assert!(
        elapsed < Duration::from_secs(10),
        "quick selftest took {elapsed:?}"
    );
}
