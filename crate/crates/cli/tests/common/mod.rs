#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hull-lil"));
    cmd.env_remove("HULL_LIL_THREADS");
    cmd
}

/// Runs the binary with `args` inside `dir` and returns its output.
pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

pub fn read_json(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("valid JSON")
}

/// Validation errors of `doc` against `schemas/<name>.schema.json`.
pub fn schema_errors(name: &str, doc: &Value) -> Vec<String> {
    let schema = read_json(&schema_dir().join(format!("{name}.schema.json")));
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect()
}

pub fn assert_valid(name: &str, path: &Path) -> Value {
    let doc = read_json(path);
    let errors = schema_errors(name, &doc);
    assert!(errors.is_empty(), "{} violates {name}: {errors:?}", path.display());
    doc
}
