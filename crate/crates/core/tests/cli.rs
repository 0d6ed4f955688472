//! Exit-code contract, canonical re-parsing and stdin handling of the CLI.

use std::io::Write;
use std::process::{Command as Proc, Stdio};

use mfwork::cli::{execute, parse_instance, Command, Limits, Status};
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn run(cmd: Command, file: &str, names: &[&str]) -> (Status, Value) {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    execute(cmd, &read(file), &names, &Limits::default())
}

/// The emitted instance re-parses to the same text.
fn assert_canonical(doc: &Value) {
    if let Some(text) = doc["instance"].as_str() {
        let again = parse_instance(text).unwrap_or_else(|e| panic!("emitted instance does not parse: {e}\n{text}"));
        assert_eq!(again.to_text(), text);
    }
}

#[test]
fn exit_codes_on_the_node() {
    use Command::*;
    let cases: &[(Command, &[&str], Status)] = &[
        (Validate, &["M"], Status::Ok),
        (Validate, &["Bad"], Status::Negative),
        (Contractible, &["M"], Status::Negative),
        (Contractible, &["T"], Status::Ok),
        (Homotopy, &["idM"], Status::Negative),
        (Cone, &["idM"], Status::Ok),
        (Shift, &["M"], Status::Ok),
        (Dual, &["M"], Status::Ok),
        (Dsum, &["M", "T"], Status::Ok),
        (Hom, &["M", "M"], Status::Ok),
        (Xi, &["M"], Status::Ok),
        (Lxi, &["M"], Status::Ok),
        (Upsilon, &["k"], Status::Ok),
        (Flatcover, &["M"], Status::Ok),
        (Stabilize, &["k"], Status::Ok),
        (Pullback, &["diag", "M"], Status::Ok),
        (Support, &["M"], Status::Ok),
        (Suppcat, &["M"], Status::Ok),
        (Resolve, &["k"], Status::Ok),
        (Perfect, &["k"], Status::Negative),
        (VerifyEquivalence, &[], Status::Ok),
        (VerifyPeriodicity, &["k"], Status::Ok),
        (RelativePerfect, &["k"], Status::Exhausted),
        (Validate, &["nope"], Status::InputError),
        (Validate, &["M", "T"], Status::InputError),
        (Xi, &["k"], Status::InputError),
        (Shift, &["Bad"], Status::InputError),
    ];
    for (cmd, names, want) in cases {
        let (status, doc) = run(*cmd, "node.inst", names);
        assert_eq!(status, *want, "{cmd:?} {names:?}: {doc}");
        assert_eq!(doc["format"], "mfwork-output v1");
        assert_eq!(doc["exit"], want.exit_code());
        assert_canonical(&doc);
    }
}

#[test]
fn other_instances() {
    use Command::*;
    let cases: &[(&str, Command, &[&str], Status)] = &[
        ("root.inst", Pushforward, &["E", "T"], Status::Ok),
        ("root.inst", Stabilize, &["k"], Status::Ok),
        ("root.inst", VerifyEquivalence, &[], Status::Ok),
        ("root.inst", Perfect, &["k"], Status::InputError),
        ("a1.inst", VerifyPeriodicity, &["k"], Status::Ok),
        ("a1.inst", Contractible, &["K"], Status::Negative),
        ("crossing.inst", RelativePerfect, &["component"], Status::Ok),
    ];
    for (file, cmd, names, want) in cases {
        let (status, doc) = run(*cmd, file, names);
        assert_eq!(status, *want, "{file} {cmd:?} {names:?}: {doc}");
        assert_canonical(&doc);
    }
}

#[test]
fn resource_bounds_exit_with_three() {
    let limits = Limits { max_syzygy: 0, ..Limits::default() };
    let (status, _) = execute(Command::Stabilize, &read("node.inst"), &["k".to_string()], &limits);
    assert_eq!(status, Status::Exhausted);
    let limits = Limits { max_degree: 1, ..Limits::default() };
    let (status, doc) = execute(Command::Resolve, &read("a1.inst"), &["k".to_string()], &limits);
    assert_eq!(status, Status::Exhausted, "{doc}");
    let limits = Limits { max_resolution: 1, ..Limits::default() };
    let (status, _) = execute(Command::Perfect, &read("node.inst"), &["k".to_string()], &limits);
    assert_eq!(status, Status::Exhausted);
}

#[test]
fn stabilized_output_validates() {
    let limits = Limits { max_syzygy: 4, ..Limits::default() };
    let (_, doc) = execute(Command::Stabilize, &read("node.inst"), &["k".to_string()], &limits);
    let emitted = doc["instance"].as_str().unwrap();
    let (status, _) = execute(Command::Validate, emitted, &["stabilization".to_string()], &Limits::default());
    assert_eq!(status, Status::Ok);
}

#[test]
fn output_is_deterministic() {
    for _ in 0..2 {
        let a = run(Command::Flatcover, "node.inst", &["M"]).1.to_string();
        let b = run(Command::Flatcover, "node.inst", &["M"]).1.to_string();
        assert_eq!(a, b);
    }
}

#[test]
fn binary_reads_stdin_and_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mfwork");
    let mut child = Proc::new(bin)
        .args(["contractible", "-", "M"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(read("node.inst").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["contractible"], false);

    let ok = Proc::new(bin).args(["validate", &data("node.inst"), "M"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let missing = Proc::new(bin).args(["validate", "/nonexistent.inst", "M"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let usage = Proc::new(bin).args(["frobnicate", "-"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let text = Proc::new(bin).args(["shift", &data("node.inst"), "M", "--text"]).output().unwrap();
    assert!(String::from_utf8(text.stdout).unwrap().starts_with("mfwork-output v1 shift: ok"));
}
