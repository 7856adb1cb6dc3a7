//! Runs the acceptance suite through the binary and prints one line per criterion.
//! The binary re-invokes itself once, so the determinism criterion compares two
//! separate processes.

use std::io::Write;
use std::process::Command;

use koszul_cli::acceptance::{line, Outcome, Status, NAMES};

fn status(s: &str) -> Status {
    match s {
        "pass" => Status::Pass,
        "fail" => Status::Fail,
        _ => Status::Skipped,
    }
}

#[test]
fn acceptance_suite() {
    let out = Command::new(env!("CARGO_BIN_EXE_koszul"))
        .args(["acceptance", "--seed", "42", "--format", "json"])
        .output()
        .expect("the binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let report: serde_json::Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    let outcomes: Vec<Outcome> = report["criteria"]
        .as_array()
        .expect("criteria list")
        .iter()
        .map(|c| {
            let id = c["id"].as_u64().unwrap();
            Outcome {
                id,
                name: NAMES[(id - 1) as usize],
                status: status(c["status"].as_str().unwrap()),
                detail: c["detail"].as_str().unwrap().to_string(),
            }
        })
        .collect();
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for o in &outcomes {
        writeln!(err, "{}", line(o)).unwrap();
    }
    drop(err);
    assert_eq!(outcomes.iter().map(|o| o.id).collect::<Vec<_>>(), (1..=12).collect::<Vec<_>>());
    let failed: Vec<u64> = outcomes.iter().filter(|o| o.status != Status::Pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "criteria not passing: {failed:?}");
    assert_eq!(out.status.code(), Some(0));
}
