//! End-to-end tests of the `magspec` binary: the exit-code contract (each
//! code has a dedicated trigger), CSV determinism and round-trip parsing,
//! and override plumbing into the resolved config artifact.

use std::path::Path;
use std::process::{Command, Output};

use magspec_cli::csvout;

fn magspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magspec"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).expect("config written");
    path.to_string_lossy().into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("cannot read {path:?}: {e}"))
}

#[test]
fn exit_zero_with_all_artifacts_on_passing_run() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let result = magspec(&["counting", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&result.stderr));

    let report = read(&out.join("report.txt"));
    assert!(report.contains("[pass]"));
    assert!(!report.contains("[FAIL]"));
    assert!(report.contains("counting-at-landau-level-b1-q0"));

    let resolved = read(&out.join("resolved-config.json"));
    let parsed: serde_json::Value = serde_json::from_str(&resolved).expect("valid JSON");
    assert_eq!(parsed["domain"]["kind"], "disk");

    let rows = csvout::parse_spectrum_csv(&read(&out.join("spectrum.csv"))).expect("valid CSV");
    assert!(!rows.is_empty());
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("summary:"), "report should be echoed to stdout");
}

#[test]
fn exit_one_when_a_check_fails_its_tolerance() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "cfg.json",
        r#"{
            "domain": { "kind": "disk" },
            "b_values": [2.0],
            "k_range": 1,
            "refine_levels": [0],
            "gauge": "landau"
        }"#,
    );
    let out = tmp.path().join("run");
    // An impossible crossing tolerance turns a passing identity check into
    // a reported violation: exit code 1, not an error.
    let result = magspec(&[
        "disk-curves",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--tol",
        "crossing=1e-30",
    ]);
    assert_eq!(result.status.code(), Some(1), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let report = read(&out.join("report.txt"));
    assert!(report.contains("[FAIL] triple-crossing-curve"));
}

#[test]
fn exit_two_on_invalid_config_values() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "cfg.json",
        r#"{
            "domain": { "kind": "disk" },
            "b_values": [-1.0],
            "k_range": 1,
            "refine_levels": [0],
            "gauge": "landau"
        }"#,
    );
    let out = tmp.path().join("run");
    let result = magspec(&["disk-curves", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("positive"), "stderr: {stderr}");
}

#[test]
fn exit_two_on_unknown_config_key() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "cfg.json",
        r#"{
            "domain": { "kind": "disk" },
            "b_values": [1.0],
            "k_range": 1,
            "refine_levels": [0],
            "gauge": "landau",
            "no_such_option": true
        }"#,
    );
    let result = magspec(&[
        "disk-curves",
        "--config",
        &cfg,
        "--out",
        tmp.path().join("run").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn exit_two_on_malformed_tolerance_flag() {
    let tmp = tempfile::tempdir().unwrap();
    let result = magspec(&[
        "counting",
        "--out",
        tmp.path().join("run").to_str().unwrap(),
        "--tol",
        "not-a-pair",
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn exit_three_on_solver_nonconvergence() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "cfg.json",
        r#"{
            "domain": { "kind": "unit-square" },
            "b_values": [1.0],
            "k_range": 2,
            "refine_levels": [1, 2],
            "gauge": "landau"
        }"#,
    );
    let out = tmp.path().join("run");
    // An unreachable residual tolerance makes every eigenpair fail its
    // convergence certificate.
    let result = magspec(&[
        "polygon-sweep",
        "--config",
        &cfg,
        "--out",
        out.to_str().unwrap(),
        "--tol",
        "eigen-residual=1e-300",
    ]);
    assert_eq!(result.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("solver"), "stderr: {stderr}");
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    for out in [&out_a, &out_b] {
        let result = magspec(&["counting", "--out", out.to_str().unwrap(), "--seed", "42"]);
        assert_eq!(result.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(out_a.join("spectrum.csv")).unwrap(),
        std::fs::read(out_b.join("spectrum.csv")).unwrap(),
        "identical config and seed must produce byte-identical CSV"
    );
    assert_eq!(
        std::fs::read(out_a.join("resolved-config.json")).unwrap(),
        std::fs::read(out_b.join("resolved-config.json")).unwrap()
    );
}

#[test]
fn csv_round_trip_reproduces_values_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "cfg.json",
        r#"{
            "domain": { "kind": "disk" },
            "b_values": [0.5, 2.0],
            "k_range": 1,
            "refine_levels": [0],
            "gauge": "landau"
        }"#,
    );
    let out = tmp.path().join("run");
    let result = magspec(&["disk-curves", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));

    let text = read(&out.join("curves.csv"));
    let rows = csvout::parse_curve_csv(&text).expect("parsable");
    assert_eq!(rows.len(), 2 * 5, "lambda curve plus four fiber curves per field value");
    let rendered = csvout::render_curve_csv(&rows).expect("renderable");
    assert_eq!(text, rendered, "parse followed by render must be the identity");

    // Spectrum schema round-trip via the counting command.
    let out2 = tmp.path().join("run2");
    let result = magspec(&["counting", "--out", out2.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let text = read(&out2.join("spectrum.csv"));
    let rows = csvout::parse_spectrum_csv(&text).expect("parsable");
    let rendered = csvout::render_spectrum_csv(&rows).expect("renderable");
    assert_eq!(text, rendered);
}

#[test]
fn resolved_config_records_flag_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let result = magspec(&[
        "counting",
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "7",
        "--refine",
        "3",
        "--tol",
        "counting-tie=1e-13",
    ]);
    assert_eq!(result.status.code(), Some(0));
    let resolved: serde_json::Value =
        serde_json::from_str(&read(&out.join("resolved-config.json"))).unwrap();
    assert_eq!(resolved["seed"], 7);
    assert_eq!(resolved["refine_levels"], serde_json::json!([2, 3]));
    assert_eq!(resolved["tolerances"]["counting-tie"], 1e-13);
}

#[test]
fn invariants_subcommand_passes_at_a_coarse_level() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let result = magspec(&["invariants", "--out", out.to_str().unwrap(), "--refine", "2"]);
    assert_eq!(result.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let report = read(&out.join("report.txt"));
    for id in [
        "dilation-scaling-t0.5",
        "dilation-scaling-t2",
        "conjugation-spectrum-even-in-field-sign",
        "gauge-choice-ground-value-gap-small",
        "gauge-gap-shrinks-under-refinement",
        "mixed-derivative-identity-real-sides-agree",
        "mixed-derivative-identity-complex-sides-agree",
    ] {
        assert!(report.contains(&format!("[pass] {id}")), "missing {id} in:\n{report}");
    }
}

#[test]
fn cylinder_subcommand_emits_composed_spectra() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let result = magspec(&["cylinder", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0));
    let rows = csvout::parse_spectrum_csv(&read(&out.join("spectrum.csv"))).unwrap();
    // Defaults: two field values, 9 Dirichlet + 10 Neumann composed values.
    assert_eq!(rows.len(), 2 * (9 + 10));
    assert!(rows.iter().all(|r| r.domain == "disk-cyl"));
}
