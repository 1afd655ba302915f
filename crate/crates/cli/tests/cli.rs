mod common;

use std::fs;

use common::{assert_valid, code, read_json, run_in, schema_errors};
use tempfile::tempdir;

#[test]
fn usage_errors_exit_one() {
    let dir = tempdir().unwrap();
    let cases: [&[&str]; 7] = [
        &["variational", "--problem", "bogus"],
        &["verify", "--suite", "bogus"],
        &["lil", "--functional", "area", "--drift", "0,0", "--nmax", "100"],
        &["lil", "--functional", "volume", "--drift", "1,0", "--nmax", "100"],
        &["lil", "--functional", "area", "--drift", "1,0", "--sigma", "1,2,3", "--nmax", "100"],
        &["simulate", "--n", "10"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run_in(dir.path(), args);
        assert_eq!(code(&out), 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempdir().unwrap();
    assert_eq!(code(&run_in(dir.path(), &["--help"])), 0);
    assert_eq!(code(&run_in(dir.path(), &["--version"])), 0);
    assert_eq!(code(&run_in(dir.path(), &["lil", "--help"])), 0);
}

#[test]
fn simulate_writes_walk_and_summary() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["simulate", "--drift", "1,0", "--n", "200", "--com", "--out-dir", "o"]);
    assert_eq!(code(&out), 0);
    let doc = assert_valid("simulate", &dir.path().join("o/simulate.json"));
    assert!(doc["com_hull_area"].as_f64().unwrap() <= doc["hull"]["area"].as_f64().unwrap());
    let walk = fs::read_to_string(dir.path().join("o/walk.csv")).unwrap();
    assert_eq!(walk.lines().next(), Some("i,x1,x2"));
    assert_eq!(walk.lines().count(), 202);

    let out = run_in(dir.path(), &["simulate", "--zero-drift", "--dim", "3", "--n", "100", "--out-dir", "o3"]);
    assert_eq!(code(&out), 0);
    let doc = assert_valid("simulate", &dir.path().join("o3/simulate.json"));
    assert!(doc["hull_volume"].as_f64().unwrap() > 0.0);
}

#[test]
fn lil_outputs_and_theoretical_constant() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["lil", "--functional", "diameter", "--zero-drift", "--sigma", "4,0,0,1", "--nmax", "2000", "--replicas", "3"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = assert_valid("lil_summary", &dir.path().join("out/summary.json"));
    assert_eq!(doc["constant_theoretical"].as_f64(), Some(2.0));
    let trace = fs::read_to_string(dir.path().join("out/trace.csv")).unwrap();
    assert_eq!(trace.lines().next(), Some("n,replica,value,running_max"));

    let out = run_in(
        dir.path(),
        &["lil", "--functional", "com-area", "--drift", "1,0", "--nmax", "500", "--replicas", "2", "--out-dir", "c"],
    );
    assert_eq!(code(&out), 0);
    let doc = assert_valid("lil_summary", &dir.path().join("c/summary.json"));
    assert!(doc["constant_theoretical"].is_null());
}

#[test]
fn variational_outputs_validate() {
    let dir = tempdir().unwrap();
    let out = run_in(dir.path(), &["variational", "--problem", "verify-fstar"]);
    assert_eq!(code(&out), 0);
    let doc = assert_valid("variational", &dir.path().join("out/verify-fstar.json"));
    assert_eq!(doc["checks"].as_array().unwrap().len(), 3);

    let out = run_in(
        dir.path(),
        &["variational", "--problem", "lambda2", "--grid", "32", "--restarts", "2", "--max-iter", "3000"],
    );
    assert!(matches!(code(&out), 0 | 2));
    let doc = assert_valid("variational", &dir.path().join("out/lambda2.json"));
    assert_eq!(doc["bound_type"], "lower");
    assert!(dir.path().join(doc["argmax_csv_path"].as_str().unwrap()).exists());

    let out = run_in(dir.path(), &["variational", "--problem", "theta-family", "--grid", "2000", "--a", "4,4.05,4.1"]);
    assert_eq!(code(&out), 0);
    let doc = assert_valid("variational", &dir.path().join("out/theta-family.json"));
    assert_eq!(doc["family"]["scanned"], 3);
}

#[test]
fn failed_parabola_check_is_flagged() {
    let dir = tempdir().unwrap();
    // Sixteen cells cannot resolve the parabola to the default tolerance.
    let out = run_in(dir.path(), &["variational", "--problem", "verify-fstar", "--grid", "16"]);
    assert_eq!(code(&out), 2);
    assert_valid("variational", &dir.path().join("out/verify-fstar.json"));
}

#[test]
fn verify_writes_report_and_radii() {
    let dir = tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["verify", "--suite", "stability", "--k", "3", "--nmax", "10000", "--permutations", "4", "--seed", "3"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_valid("verify", &dir.path().join("out/verify_stability.json"));
    let radii = fs::read_to_string(dir.path().join("out/stability_radii.csv")).unwrap();
    assert_eq!(radii.lines().next(), Some("n,radius"));
    assert_eq!(radii.lines().count(), 3);

    let out = run_in(dir.path(), &["verify", "--suite", "lemmas-s5", "--functions", "50"]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS") && !stdout.contains("FAIL"));
    assert_valid("verify", &dir.path().join("out/verify_lemmas.json"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempdir().unwrap();
    fs::write(
        dir.path().join("run.json"),
        r#"{"functional": "v1", "drift": [1, 0], "nmax": 800, "replicas": 5, "seed": 4, "out_dir": "cfg"}"#,
    )
    .unwrap();
    let out = run_in(dir.path(), &["--config", "run.json", "lil", "--replicas", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = read_json(&dir.path().join("cfg/summary.json"));
    assert_eq!(doc["replicas"], 2);
    assert_eq!(doc["seed"], 4);
    assert_eq!(doc["n_max"], 800);
}

#[test]
fn thread_count_from_environment() {
    let dir = tempdir().unwrap();
    let out = common::bin()
        .current_dir(dir.path())
        .env("HULL_LIL_THREADS", "many")
        .args(["verify", "--suite", "steiner"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn schemas_reject_malformed_documents() {
    let doc = serde_json::json!({"problem": "lambda2", "N": 0});
    assert!(!schema_errors("variational", &doc).is_empty());
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let dir = tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["lil", "--functional", "area", "--zero-drift", "--nmax", "3000", "--replicas", "4", "--seed", "9"],
        &["simulate", "--drift", "0.5,-1", "--n", "300", "--com", "--seed", "9"],
        &["variational", "--problem", "v2", "--grid", "24", "--restarts", "2", "--max-iter", "500"],
    ];
    for args in runs {
        let mut snapshots = Vec::new();
        for (i, threads) in ["1", "1"].iter().enumerate() {
            let out_dir = format!("run{i}");
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--out-dir", &out_dir, "--threads", threads]);
            let out = run_in(dir.path(), &full);
            assert!(matches!(code(&out), 0 | 2), "{full:?}");
            let mut files: Vec<_> = fs::read_dir(dir.path().join(&out_dir))
                .unwrap()
                .map(|e| e.unwrap().path())
                .collect();
            files.sort();
            let contents: Vec<(String, String)> = files
                .iter()
                .map(|p| {
                    let text = fs::read_to_string(p).unwrap();
                    (p.file_name().unwrap().to_string_lossy().into_owned(), text.replace(&out_dir, "DIR"))
                })
                .collect();
            snapshots.push(contents);
        }
        assert_eq!(snapshots[0], snapshots[1], "{args:?}");
    }
}
