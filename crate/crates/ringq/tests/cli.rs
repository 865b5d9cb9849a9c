//! End-to-end tests of the `ringq` binary: flags, config ingestion, exit
//! codes, CSV format, and reproducibility of echoed configs.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ringq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn modulus_closed_form() {
    let out = ringq(&["modulus", "--n", "2", "--p", "4", "--r1", "1", "--r2", "16"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let value = doc["results"]["exact"]["value"].as_f64().unwrap();
    assert!((value - 1.216021170167572e-2).abs() < 1e-15);
    assert_eq!(doc["results"]["exact"]["method"], "closed_form");
    assert_eq!(doc["seed"].as_u64().unwrap(), 42);
    assert_eq!(doc["command"], "modulus");
}

#[test]
fn modulus_both_solvers_report_discrepancy() {
    let out = ringq(&[
        "modulus",
        "--n",
        "2",
        "--p",
        "4",
        "--r1",
        "1",
        "--r2",
        "16",
        "--solver",
        "both",
        "--grid-points",
        "10000",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let disc = doc["results"]["relative_discrepancy"].as_f64().unwrap();
    assert!(disc < 1e-4, "discrepancy {disc}");
    assert_eq!(
        doc["results"]["grid"]["grid_points"].as_u64().unwrap(),
        10_000
    );
}

#[test]
fn modulus_rejects_p_at_or_below_n() {
    let out = ringq(&["modulus", "--n", "2", "--p", "2", "--r1", "1", "--r2", "16"]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("requires p > n"), "stderr: {stderr}");
}

#[test]
fn modulus_rejects_bad_ring() {
    let out = ringq(&["modulus", "--n", "2", "--p", "4", "--r1", "4", "--r2", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_extremal_power_map_passes() {
    let out = ringq(&[
        "verify", "--map", "f1", "--n", "2", "--p", "4", "--K", "2", "--alpha", "1", "--rings",
        "1:2,1:16",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["results"]["all_pass"], Value::Bool(true));
    let reports = doc["results"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert_eq!(r["verdict"], Value::Bool(true));
        assert!(r["sharpness_residual"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn verify_rejects_ring_below_log_profile_domain() {
    let out = ringq(&[
        "verify", "--map", "f2", "--n", "2", "--p", "4", "--K", "1", "--alpha", "2", "--rings",
        "0.5:2",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_detects_inflated_image_modulus() {
    // the extremal profile for (n,p,K,alpha) = (2,4,2,1) is 2 sqrt(t);
    // shrinking the image (smaller c) inflates the p-modulus for p > n and
    // must trip the inequality, while enlarging it keeps the check green
    let dir = tempfile::tempdir().unwrap();
    let write_cfg = |c: f64| -> String {
        let path = dir.path().join(format!("profile_{c}.json"));
        std::fs::write(
            &path,
            format!(
                r#"{{
                    "problem": {{"n": 2, "p": 4.0}},
                    "qfield": {{"kind": "power_law", "K": 2.0, "alpha": 1.0}},
                    "profile": {{"kind": "power", "c": {c}, "beta": 0.5}},
                    "rings": [{{"r1": 1.0, "r2": 16.0}}]
                }}"#
            ),
        )
        .unwrap();
        path.to_string_lossy().into_owned()
    };

    let halved = ringq(&["verify", "--map", "config", "--config", &write_cfg(1.0)]);
    assert_eq!(
        code(&halved),
        1,
        "halved constant must violate the inequality"
    );
    let doc = stdout_json(&halved);
    assert_eq!(doc["results"]["all_pass"], Value::Bool(false));

    let doubled = ringq(&["verify", "--map", "config", "--config", &write_cfg(4.0)]);
    assert_eq!(
        code(&doubled),
        0,
        "doubled constant shrinks the image modulus"
    );

    let exact = ringq(&["verify", "--map", "config", "--config", &write_cfg(2.0)]);
    assert_eq!(code(&exact), 0);
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>, Option<f64>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    let mut liminf = None;
    for line in lines {
        if let Some(rest) = line.strip_prefix("# liminf_estimate = ") {
            liminf = Some(rest.trim().parse().unwrap());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        rows.push(line.split(',').map(|t| t.parse::<f64>().unwrap()).collect());
    }
    (header, rows, liminf)
}

#[test]
fn sweep_power_regime_csv() {
    let out = ringq(&[
        "sweep",
        "--map",
        "f1",
        "--n",
        "2",
        "--p",
        "4",
        "--K",
        "2",
        "--alpha",
        "1",
        "--R-start",
        "10",
        "--R-end",
        "1e6",
        "--R-steps",
        "11",
        "--spacing",
        "log",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows, liminf) = parse_csv(&String::from_utf8_lossy(&out.stdout));
    assert_eq!(
        header,
        vec![
            "R",
            "L",
            "normalizer",
            "ratio",
            "finite_bound",
            "asymptotic_constant"
        ]
    );
    assert_eq!(rows.len(), 11);
    for row in &rows {
        assert_eq!(row.len(), 6);
        assert!((row[3] - 2.0).abs() < 1e-12); // ratio
        assert!(row[4] < row[1]); // finite bound below the distortion
        assert!((row[5] - 2.0).abs() < 1e-12); // asymptotic constant
    }
    assert!((liminf.unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn sweep_log_regime_ratio() {
    let out = ringq(&[
        "sweep",
        "--map",
        "f2",
        "--n",
        "2",
        "--p",
        "4",
        "--K",
        "1",
        "--alpha",
        "2",
        "--R-start",
        "1e2",
        "--R-end",
        "1e8",
        "--R-steps",
        "13",
    ]);
    assert_eq!(code(&out), 0);
    let (_, rows, liminf) = parse_csv(&String::from_utf8_lossy(&out.stdout));
    let c = (2.0f64 / 3.0).powf(1.5);
    for row in &rows {
        assert!((row[3] - c).abs() < 1e-9);
    }
    assert!((liminf.unwrap() - c).abs() < 1e-9);
}

#[test]
fn sweep_rejects_short_sweeps() {
    let out = ringq(&[
        "sweep",
        "--map",
        "f1",
        "--n",
        "2",
        "--p",
        "4",
        "--K",
        "2",
        "--alpha",
        "1",
        "--R-start",
        "10",
        "--R-end",
        "1e6",
        "--R-steps",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_rejects_unwritable_output() {
    let out = ringq(&[
        "sweep",
        "--map",
        "f1",
        "--n",
        "2",
        "--p",
        "4",
        "--K",
        "2",
        "--alpha",
        "1",
        "--R-start",
        "10",
        "--R-end",
        "1e6",
        "--R-steps",
        "11",
        "--out",
        "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_out_file_and_document() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let args = [
        "sweep",
        "--map",
        "f1",
        "--n",
        "2",
        "--p",
        "4",
        "--K",
        "2",
        "--alpha",
        "1",
        "--R-start",
        "10",
        "--R-end",
        "1e6",
        "--R-steps",
        "11",
        "--out",
        csv_path.to_str().unwrap(),
    ];
    let out = ringq(&args);
    assert_eq!(code(&out), 0);
    // with --out, stdout carries the result document instead of the CSV
    let doc = stdout_json(&out);
    assert_eq!(doc["results"]["rows"].as_u64().unwrap(), 11);
    assert!((doc["results"]["liminf_estimate"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(doc["results"]["soundness_pass"], Value::Bool(true));
    let first = std::fs::read(&csv_path).unwrap();

    // identical invocation reproduces the CSV byte for byte
    let again = ringq(&args);
    assert_eq!(code(&again), 0);
    assert_eq!(first, std::fs::read(&csv_path).unwrap());
    assert!(String::from_utf8(first)
        .unwrap()
        .starts_with("R,L,normalizer,"));
}

fn write_config(dir: &Path, doc: &Value) -> String {
    let path = dir.join("echo.json");
    std::fs::write(&path, serde_json::to_string_pretty(&doc["config"]).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn modulus_round_trips_through_echoed_config() {
    let out = ringq(&[
        "modulus",
        "--n",
        "2",
        "--p",
        "4",
        "--r1",
        "1",
        "--r2",
        "16",
        "--solver",
        "both",
        "--grid-points",
        "2000",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &doc);
    let again = ringq(&[
        "modulus",
        "--config",
        &cfg,
        "--solver",
        "both",
        "--grid-points",
        "2000",
    ]);
    assert_eq!(code(&again), 0);
    let doc2 = stdout_json(&again);
    assert_eq!(
        doc["results"], doc2["results"],
        "echoed config must reproduce results exactly"
    );
}

#[test]
fn verify_round_trips_through_echoed_config() {
    let out = ringq(&[
        "verify", "--map", "f1", "--n", "2", "--p", "4", "--K", "2", "--alpha", "1", "--rings",
        "1:2,3:81",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &doc);
    // the echo carries the resolved profile, so --map config suffices
    let again = ringq(&["verify", "--map", "config", "--config", &cfg]);
    assert_eq!(code(&again), 0);
    assert_eq!(doc["results"], stdout_json(&again)["results"]);
}

#[test]
fn verify_q_flag_overrides_default_weight() {
    // constant weight 1 with the identity-like profile from config
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("identity.json");
    std::fs::write(
        &path,
        r#"{
            "problem": {"n": 3, "p": 5.0},
            "profile": {"kind": "power", "c": 1.0, "beta": 1.0},
            "rings": [{"r1": 1.0, "r2": 7.0}]
        }"#,
    )
    .unwrap();
    let out = ringq(&[
        "verify",
        "--map",
        "config",
        "--config",
        path.to_str().unwrap(),
        "--q",
        "constant:1",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    assert!(
        doc["results"]["reports"][0]["sharpness_residual"]
            .as_f64()
            .unwrap()
            < 1e-12
    );
}
