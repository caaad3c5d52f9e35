use std::io::Write;
use std::process::{Command, Output};

fn netalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const SUCC4: &str = r#"{"domain": ["0","1","2","3"], "cells": {"succ4": {"arity": [1,1], "init": ["0"],
    "table": {"0": ["1"], "1": ["2"], "2": ["3"], "3": ["0"]}}}}"#;

#[test]
fn typecheck_transposition() {
    let o = netalg(&["typecheck", "X(2,1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3 -> 3\n");
}

#[test]
fn parse_prints_canonical_form() {
    let o = netalg(&["parse", "((a;b);c)"]);
    assert_eq!(stdout(&o), "a ; b ; c\n");
}

#[test]
fn term_from_file() {
    let t = file("cp(1) ;\n eq(1)\n");
    let o = netalg(&["typecheck", &format!("@{}", t.path().display())]);
    assert_eq!(stdout(&o), "1 -> 1\n");
}

#[test]
fn eval_counter_in_both_models() {
    let env = file(SUCC4);
    let path = env.path().to_str().unwrap();
    for model in ["stream", "proc"] {
        let o = netalg(&[
            "eval",
            "(succ4 ; cp(1))^1",
            "--env",
            path,
            "--ticks",
            "5",
            "--model",
            model,
        ]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "1: 0 1 2 3 0\n");
    }
}

#[test]
fn eval_reads_input_streams() {
    let env = file(SUCC4);
    let inputs = file("# one stream\n1: 3 ~ 1\n");
    let o = netalg(&[
        "eval",
        "succ4",
        "--env",
        env.path().to_str().unwrap(),
        "--inputs",
        inputs.path().to_str().unwrap(),
        "--ticks",
        "4",
    ]);
    assert_eq!(stdout(&o), "1: 0 0 ~ 2\n");
}

#[test]
fn simulate_prints_event_log() {
    let inputs = file("1: 0\n");
    let o = netalg(&[
        "simulate",
        "I(1)",
        "--inputs",
        inputs.path().to_str().unwrap(),
        "--ticks",
        "1",
        "--events",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    // wires deliver within the slice they receive
    assert_eq!(lines.next(), Some("1: 0"));
    for line in lines {
        assert_eq!(line.split('\t').count(), 4, "{line}");
    }
}

#[test]
fn iso_exit_codes() {
    let env = file(SUCC4);
    let path = env.path().to_str().unwrap();
    let o = netalg(&[
        "iso",
        "(I(1) ++ succ4) ; X(1,1)",
        "X(1,1) ; (succ4 ++ I(1))",
        "--env",
        path,
    ]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("ISO\n", Some(0)));
    // swapping the outputs of a copy is a synchronous law, not a graph isomorphism
    let o = netalg(&["iso", "cp(1) ; X(1,1)", "cp(1)"]);
    assert_eq!(
        (stdout(&o).as_str(), o.status.code()),
        ("NOT-ISO\n", Some(1))
    );
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(netalg(&["parse", "I(1) ++"]).status.code(), Some(2));
    assert_eq!(netalg(&["typecheck", "I(1) ; I(2)"]).status.code(), Some(2));
    assert_eq!(netalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(netalg(&["eval", "f"]).status.code(), Some(2));
}

#[test]
fn axioms_report_lines() {
    let o = netalg(&[
        "axioms", "--model", "stream", "--trials", "5", "--table", "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 18);
    assert!(text.lines().all(|l| l.split('\t').nth(2) == Some("PASS")));
}

#[test]
fn demo_regular_has_twelve_cells() {
    let o = netalg(&["demo", "regular", "--k", "3", "--l", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches('f').count(), 12);
}
