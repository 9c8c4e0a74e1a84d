//! Golden-file comparison for the command-line tool.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub const FIXTURES: [&str; 3] = ["k3", "c4_i", "bowtie"];

/// `(file suffix, arguments before the file name)`.
pub const SUBCOMMANDS: [(&str, &[&str]); 9] = [
    ("balance.json", &["balance"]),
    ("distmat.json", &["distmat", "--order", "standard"]),
    ("compat.json", &["compat"]),
    ("spectrum.json", &["spectrum"]),
    ("spectrum-distance.json", &["spectrum", "--distance"]),
    ("sachs.json", &["sachs"]),
    ("blocks.json", &["blocks"]),
    ("complete-max.gg", &["complete", "--which", "max"]),
    ("complete-min.gg", &["complete", "--which", "min"]),
];

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_binary(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gainspec"))
        .args(args)
        .env_remove("GAINSPEC_TOL")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn close(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-9 * x.abs().max(1.0)
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| close(p, q)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| close(v, w)))
        }
        _ => a == b,
    }
}

/// JSON compares structurally with a relative float tolerance; graph files
/// compare after parsing.
pub fn matches(suffix: &str, expected: &str, actual: &str) -> bool {
    if suffix.ends_with(".json") {
        match (serde_json::from_str::<Value>(expected), serde_json::from_str::<Value>(actual)) {
            (Ok(e), Ok(a)) => close(&e, &a),
            _ => false,
        }
    } else {
        match (gainspec::parse_graph(expected), gainspec::parse_graph(actual)) {
            (Ok(e), Ok(a)) => e.graph().approx_eq(a.graph()),
            _ => false,
        }
    }
}

/// Runs every subcommand on every fixture; returns the mismatches.
/// With `GAINSPEC_BLESS=1` the expected files are rewritten instead.
pub fn check_all() -> Vec<String> {
    let bless = std::env::var("GAINSPEC_BLESS").is_ok_and(|v| v == "1");
    let mut failures = Vec::new();
    for fixture in FIXTURES {
        let input = dir().join(format!("{fixture}.gg"));
        for (suffix, args) in SUBCOMMANDS {
            let mut argv = args.to_vec();
            let path = input.to_str().unwrap();
            argv.push(path);
            let run = run_binary(&argv);
            let name = format!("{fixture}.{suffix}");
            if run.code != 0 {
                failures.push(format!("{name}: exit {} ({})", run.code, run.stderr.trim()));
                continue;
            }
            let expected_path = dir().join(&name);
            if bless {
                std::fs::write(&expected_path, &run.stdout).unwrap();
                continue;
            }
            match std::fs::read_to_string(&expected_path) {
                Ok(expected) if matches(suffix, &expected, &run.stdout) => {}
                Ok(_) => failures.push(format!("{name}: output differs")),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    }
    failures
}
