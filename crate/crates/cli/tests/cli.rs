use std::path::PathBuf;

use serde_json::Value;
use truestages_cli::app::{run, Outcome};

fn call(args: &[&str]) -> Outcome {
    run(std::iter::once("truestages").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = call(args);
    (
        out.code,
        serde_json::from_str(&out.output).expect("json report"),
    )
}

fn instance(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn verify_reports_every_property() {
    let out = call(&[
        "verify",
        "--levels",
        "0,1,2",
        "--max-len",
        "4",
        "--alphabet",
        "3",
        "--format",
        "text",
    ]);
    assert_eq!(out.code, 0, "{}", out.output);
    for label in ["TS1", "TS2", "TS3", "TS5", "TS7", "CLUB", "TS9"] {
        assert!(out
            .output
            .lines()
            .any(|l| l.starts_with(label) && l.contains("pass")));
    }
}

#[test]
fn broken_operator_exits_with_failures() {
    let (code, v) = json(&["verify", "--reversed", "--levels", "0,1", "--max-len", "3"]);
    assert_eq!(code, 1);
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn envelope_has_the_four_keys() {
    let (code, v) = json(&["jump", "--max-len", "2"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "config", "failures", "results"]);
    assert_eq!(v["command"], "jump");
    assert_eq!(v["results"].as_array().unwrap().len(), 7);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(
        call(&["lsr", "solve", "--instance", "missing.json"]).code,
        2
    );
    assert_eq!(call(&["verify", "--levels", "w+"]).code, 2);
    assert_eq!(call(&["frobnicate"]).code, 2);
    assert_eq!(call(&["wadge", "decompose", "--alpha", "2"]).code, 2);
    let bad = instance("malformed.json", "{\"xi\": 1");
    assert_eq!(
        call(&["lsr", "solve", "--instance", bad.to_str().unwrap()]).code,
        2
    );
}

#[test]
fn roundtrip_passes() {
    let out = call(&[
        "hk",
        "roundtrip",
        "--seed",
        "7",
        "--max-len",
        "3",
        "--alphabet",
        "2",
        "--alpha",
        "1",
    ]);
    assert_eq!(out.code, 0, "{}", out.output);
}

#[test]
fn relation_dump_lines() {
    let out = call(&[
        "truestages",
        "--max-len",
        "1",
        "--alphabet",
        "2",
        "--levels",
        "0",
        "--format",
        "text",
    ]);
    let lines: Vec<&str> = out.output.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines.contains(&"0\t[]\t[1]\t1"));
    assert!(lines.contains(&"0\t[0]\t[1]\t0"));
}

#[test]
fn solves_an_instance_file() {
    let path = instance(
        "i_wins.json",
        r#"{"xi": "0", "W": {"level": "0", "generators": [[]]}, "T0": {"full": true},
            "T1": {"pairs": [[[], []]]}, "bounds": {"alphabet": 2, "depth": 2}}"#,
    );
    let (code, v) = json(&[
        "lsr",
        "solve",
        "--instance",
        path.to_str().unwrap(),
        "--depth",
        "2",
    ]);
    assert_eq!(code, 0);
    let sol = &v["results"][0]["solution"];
    assert_eq!(sol["result"], "i_wins");
    assert_eq!(sol["by_turn"], 1);
}

#[test]
fn text_mode_carries_the_same_values() {
    let args = [
        "wadge",
        "eval",
        "--alpha",
        "w",
        "--alphabet",
        "2",
        "--seed",
        "4",
    ];
    let (_, v) = json(&args);
    let text = call(&[&args[..], &["--format", "text"]].concat()).output;
    for (i, r) in v["results"].as_array().unwrap().iter().enumerate() {
        assert!(text.contains(&format!("results[{i}].value = {}", r["value"])));
    }
}
