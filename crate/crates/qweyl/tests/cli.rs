//! End-to-end checks of the `qweyl` binary: exit-code contract, report
//! reproducibility, and the expand surface.

use std::process::{Command, Output};

fn qweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qweyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: everything passes
    let out = qweyl(&["verify", "dalembert", "--s-max", "1", "--draws", "1"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // 1: nonzero residual (off-cone negative control)
    let out = qweyl(&[
        "verify",
        "dalembert",
        "--s-max",
        "2",
        "--draws",
        "1",
        "--cone",
        "off",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // 2: usage errors (unknown flag, bad word, bad gamma list)
    let out = qweyl(&["verify", "dalembert", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qweyl(&["expand", "word", "x+ * y"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qweyl(&[
        "expand", "chat", "--side", "plus", "--s", "0", "--gammas", "1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "verify", "weyl", "--side", "plus", "--s-max", "1", "--draws", "2", "--seed", "9",
        "--format", "json",
    ];
    let a = qweyl(&args);
    let b = qweyl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same config must give identical bytes");

    // parallel and serial runs yield the same items
    let serial = qweyl(&[
        "verify", "dalembert", "--s-max", "2", "--draws", "1", "--seed", "3", "--workers", "1",
        "--format", "json",
    ]);
    let parallel = qweyl(&[
        "verify", "dalembert", "--s-max", "2", "--draws", "1", "--seed", "3", "--workers", "4",
        "--format", "json",
    ]);
    let items = |raw: &[u8]| {
        let v: serde_json::Value = serde_json::from_slice(raw).expect("json report");
        v.get("items").cloned().expect("items array")
    };
    assert_eq!(items(&serial.stdout), items(&parallel.stdout));
}

#[test]
fn expand_word_prints_the_relation() {
    let out = qweyl(&["expand", "word", "x+ * x-"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "x- x+ + (q - q^-1) v vb");
}

#[test]
fn expand_planewave_outputs() {
    let out = qweyl(&["expand", "planewave", "--s", "0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1");

    let out = qweyl(&["expand", "planewave", "--s", "1", "--format", "latex"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("\\["));
    // the four-term h_1
    assert_eq!(text.matches("k_").count(), 4);

    let out = qweyl(&["expand", "planewave", "--s", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_weyl_descending_order_is_reported_failing() {
    // The factor-order convention stays pinned from the command line too.
    let out = qweyl(&[
        "verify", "weyl", "--side", "plus", "--s-max", "2", "--draws", "1", "--seed", "7",
        "--order", "descending",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
}

#[test]
fn classical_runs_quickly_at_small_degrees() {
    let out = qweyl(&[
        "verify",
        "classical",
        "--coord-degree",
        "2",
        "--z-degree",
        "1",
        "--s-max",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank = 10"));
}
