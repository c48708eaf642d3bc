//! Acceptance suite for the CLI surface: the exit-code contract and
//! byte-level determinism of structured reports. The numeric criteria
//! live in the library crate's acceptance suite.

use std::process::{Command, Output};

fn triadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triadic"))
        .args(args)
        .output()
        .expect("binary runs")
}

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn run(n: u32, name: &str, f: impl FnOnce() -> Result<(), String>) {
    match f() {
        Ok(()) => println!("ACCEPTANCE {n} ({name}): PASS"),
        Err(e) => {
            println!("ACCEPTANCE {n} ({name}): FAIL: {e}");
            panic!("criterion {n} ({name}) failed: {e}");
        }
    }
}

#[test]
fn criterion_8_exit_code_contract() {
    run(8, "exit-code contract", || {
        let out = triadic(&["axioms", "PL", "--samples", "10000", "--seed", "42"]);
        check!(out.status.code() == Some(1), "axioms PL must exit 1");
        let text = String::from_utf8(out.stdout).unwrap();
        check!(
            text.contains("(1, 3, 5, 1, 2)"),
            "PL failure must print a witness: {text}"
        );

        let out = triadic(&["axioms", "Kii", "--samples", "10000", "--seed", "42"]);
        check!(out.status.code() == Some(0), "axioms Kii must exit 0");

        let out = triadic(&["axioms", "sqdiff", "--samples", "10000", "--seed", "42"]);
        check!(
            out.status.code() == Some(1),
            "the non-metric negative control must exit 1"
        );

        let out = triadic(&["axioms", "nonsense"]);
        check!(out.status.code() == Some(2), "unknown target must exit 2");
        let out = triadic(&["analyze", "/does/not/exist", "--indicator", "Kii"]);
        check!(out.status.code() == Some(2), "parse errors must exit 2");
        Ok(())
    });
}

#[test]
fn criterion_9_structured_reports_are_byte_identical() {
    run(9, "deterministic structured reports", || {
        let args = [
            "axioms",
            "Kii",
            "--samples",
            "100000",
            "--seed",
            "42",
            "--out",
            "structured",
        ];
        let first = triadic(&args);
        let second = triadic(&args);
        check!(
            first.status.code() == Some(0) && second.status.code() == Some(0),
            "both runs must succeed"
        );
        check!(
            !first.stdout.is_empty(),
            "structured report must not be empty"
        );
        check!(
            first.stdout == second.stdout,
            "two runs with identical (config, seed) must be byte-identical"
        );

        let report: serde_json::Value =
            serde_json::from_slice(&first.stdout).map_err(|e| format!("invalid json: {e}"))?;
        for field in ["target", "scalar", "plan", "axioms", "verdict"] {
            check!(
                !report[field].is_null(),
                "stable field `{field}` missing from the report"
            );
        }
        check!(report["plan"]["seed"] == 42, "plan must echo the seed");
        check!(
            report["verdict"] == "pass",
            "Kii verdict must be pass, got {}",
            report["verdict"]
        );
        Ok(())
    });
}
