#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// One golden CLI invocation: name of the expected-output file, arguments
/// (`@name` expands to an input file), expected exit status.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase { name: "bound_2_3_4", args: &["bound", "2", "3", "4"], exit: 0 },
    GoldenCase { name: "bound_from_instance", args: &["bound", "@t0_2_3.json"], exit: 0 },
    GoldenCase { name: "dims_2_3", args: &["dims", "2", "3"], exit: 0 },
    GoldenCase { name: "dims_2_3_json", args: &["--format", "json", "dims", "2", "3"], exit: 0 },
    GoldenCase { name: "verify_exact_2_2_2", args: &["verify-exact", "2", "2", "2"], exit: 0 },
    GoldenCase { name: "extremal_2_2", args: &["extremal", "2", "2"], exit: 0 },
    GoldenCase {
        name: "extremal_2_3_2_anchored",
        args: &["extremal", "2", "3", "2", "--anchors", "1,2,0"],
        exit: 0,
    },
    GoldenCase { name: "prune_t0_3_3_plus_21", args: &["prune", "@t0_3_3_plus_21.json"], exit: 0 },
    GoldenCase { name: "prune_t0_2_2", args: &["prune", "@t0_2_2.json"], exit: 0 },
    GoldenCase { name: "find_witness_full_square", args: &["find-witness", "@full_square.json"], exit: 0 },
    GoldenCase {
        name: "find_witness_full_square_json",
        args: &["--format", "json", "find-witness", "@full_square.json"],
        exit: 0,
    },
    GoldenCase { name: "find_witness_t0_2_3", args: &["find-witness", "@t0_2_3.json"], exit: 0 },
    GoldenCase {
        name: "find_witness_t0_3_3_plus_21",
        args: &["find-witness", "@t0_3_3_plus_21.json"],
        exit: 0,
    },
    GoldenCase {
        name: "sample_3_3",
        args: &["sample", "3", "3", "--size", "5", "--seed", "4"],
        exit: 0,
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn input(name: &str) -> String {
    golden_dir().join("inputs").join(name).display().to_string()
}

pub fn expand(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => input(name),
            None => a.to_string(),
        })
        .collect()
}

pub struct Outcome {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

pub fn run_binary(args: &[String]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_wellconn"))
        .args(args)
        .output()
        .expect("failed to spawn wellconn");
    Outcome {
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        code: out.status.code().unwrap_or(-1),
    }
}

/// Runs a case twice and compares both runs with the golden file.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let args = expand(case.args);
    let first = run_binary(&args);
    let second = run_binary(&args);
    if first.code != case.exit {
        return Err(format!(
            "{}: exit {} (expected {}), stderr: {}",
            case.name, first.code, case.exit, first.stderr
        ));
    }
    if first.stdout != second.stdout {
        return Err(format!("{}: output differs between runs", case.name));
    }
    let path = golden_dir().join(format!("{}.txt", case.name));
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if first.stdout != expected {
        return Err(format!(
            "{}: output does not match golden file\n--- got ---\n{}",
            case.name,
            String::from_utf8_lossy(&first.stdout)
        ));
    }
    Ok(())
}
