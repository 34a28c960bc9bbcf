//! End-to-end checks of the command-line surface: exit codes, deterministic
//! output and error reporting.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevpos"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn member_exit_codes() {
    let ok = run(&[
        "member",
        "--type",
        "A3",
        "--word",
        "1,2,3,1,2,1",
        "--point",
        "4,2,1,1,1,2",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("member"));

    let bad = run(&[
        "member",
        "--type",
        "A3",
        "--word",
        "1,2,3,1,2,1",
        "--point",
        "1,2,1,1,1,2",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("violated"));
}

#[test]
fn usage_errors_exit_two() {
    let missing = run(&["member", "--point", "1"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad_quiver = run(&["region", "--quiver", "A3: 1>2"]);
    assert_eq!(bad_quiver.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_quiver.stderr).contains("error"));

    let bad_word = run(&["signs", "--type", "A2", "--word", "1,x"]);
    assert_eq!(bad_word.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&bad_word.stderr);
    assert!(msg.contains("line 1"), "missing position in: {msg}");
}

#[test]
fn non_reduced_word_rejected() {
    let out = run(&["signs", "--type", "A2", "--word", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not reduced"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["region", "--quiver", "A3:1>2,2>3", "--symbolic", "--json"],
        vec![
            "verify", "--suite", "braid", "--type", "A2", "--cases", "5", "--seed", "3",
        ],
        vec!["sample", "--type", "A2", "--seed", "9", "--json"],
        vec![
            "decompose",
            "--type",
            "A2",
            "--element",
            "+1:1 +2:1 -1:-2 h1:3",
            "--json",
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn seed_env_fallback() {
    let explicit = run(&["sample", "--type", "A2", "--seed", "11"]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_chevpos"))
        .args(["sample", "--type", "A2"])
        .env("RCG_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, via_env.stdout);
}

#[test]
fn verify_failure_prints_reproducer() {
    // An impossible rank for the type is a usage error, not a failed suite.
    let bad = run(&[
        "verify", "--suite", "algebra", "--type", "D3", "--cases", "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));

    // A passing suite exits zero and prints per-check lines.
    let ok = run(&[
        "verify", "--suite", "signs", "--type", "A2", "--cases", "3", "--seed", "1",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8_lossy(&ok.stdout);
    assert!(text.lines().all(|l| l.contains("ok")));
}

#[test]
fn decompose_spot_check() {
    let out = run(&[
        "decompose",
        "--type",
        "A1",
        "--element",
        "+1:1 h1:1 -1:-1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["minus"]["coords"][0], "1/2");
    assert_eq!(v["h"]["coords"][0], "2");
    assert_eq!(v["plus"]["coords"][0], "1/2");
    assert_eq!(v["h"]["positive"], true);
}

#[test]
fn suffix_command() {
    let ok = run(&[
        "suffix", "--type", "A3", "--prefix", "3", "--point", "2,1,1", "--cell",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let outside = run(&[
        "suffix", "--type", "A3", "--prefix", "3", "--point", "1,4,1",
    ]);
    assert_eq!(outside.status.code(), Some(1));
}
