//! Binary-level behaviour: exit codes, config handling, output schemas, and
//! the negative control for the validation suite.

use experiment_cli::experiments::{collapse, field_scan, validate};
use experiment_cli::{Experiment, RunConfig};
use schedule_optimizer::OptimOptions;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_dqa")
}

#[test]
fn unknown_experiment_is_a_config_error() {
    let out = Command::new(bin())
        .args(["--experiment", "frobnicate"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_experiment_is_a_config_error() {
    let out = Command::new(bin()).output().expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ini");
    std::fs::write(&path, "[params\nwat\n").unwrap();
    let out = Command::new(bin())
        .arg("--config")
        .arg(&path)
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_scan_writes_stable_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(bin())
        .args(["--experiment", "bound-scan", "--seed", "1", "--out"])
        .arg(dir.path())
        .env("DQA_BOUND_SCAN_UNUSED", "1")
        .args(["--threads", "4"])
        .arg("--config")
        .arg({
            let p = dir.path().join("cfg.ini");
            std::fs::write(&p, "[params]\nn_list = 12\np_min = 1\np_max = 3\n").unwrap();
            p
        })
        .status()
        .expect("spawn");
    assert!(status.success());
    let text = std::fs::read_to_string(dir.path().join("bound_scan.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,p,eps_res_opt,bound,saturated,n_iterations,config_hash"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!(row.starts_with("12,"));
        assert!(row.contains(",true,"), "row should saturate: {row}");
    }
}

#[test]
fn validate_negative_control_fails_on_corrupted_rotation() {
    let clean = validate::run_checks(11, validate::Injection::None);
    assert!(clean.passed());

    let corrupted = validate::run_checks(11, validate::Injection::FlipDriverRotationSign);
    assert!(!corrupted.passed(), "corrupted rotation must be detected");
    let oracle = corrupted
        .checks
        .iter()
        .find(|c| c.name == "oracle-equivalence")
        .unwrap();
    assert!(!oracle.passed);
}

#[test]
fn validate_cli_exit_code_is_zero_on_pass() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(bin())
        .args(["--experiment", "validate", "--seed", "2", "--out"])
        .arg(dir.path())
        .status()
        .expect("spawn");
    assert_eq!(status.code(), Some(0));
    let report = std::fs::read_to_string(dir.path().join("validate_report.txt")).unwrap();
    assert!(report.contains("OK: 10 of 10 checks passed"));
}

#[test]
fn out_dir_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(bin())
        .args(["--experiment", "validate", "--seed", "2"])
        .env(experiment_cli::OUT_DIR_ENV, dir.path())
        .status()
        .expect("spawn");
    assert!(status.success());
    assert!(dir.path().join("validate_report.txt").exists());
}

#[test]
fn collapse_experiment_separates_regular_from_irregular() {
    let params = collapse::CollapseParams {
        n: 80,
        p_target: 16,
        pair: (8, 16),
        include_irregular: true,
    };
    let output = collapse::compute(&params, 3, &OptimOptions::default()).unwrap();
    assert!(
        output.pair_distance < 0.1,
        "regular pair distance {}",
        output.pair_distance
    );
    let irregular = output.irregular_distance.unwrap();
    assert!(irregular > 0.5, "irregular distance {irregular}");
}

#[test]
fn field_scan_locates_critical_point() {
    let params = field_scan::FieldScanParams {
        h_list: vec![0.0, 0.25, 0.5],
        p_target: 32,
        n_eval_factor: 4,
    };
    let profiles = field_scan::compute(&params, &OptimOptions::default()).unwrap();
    let mut previous = -1.0;
    for profile in &profiles {
        assert!(profile.monotone, "h={} profile not monotone", profile.h);
        assert!(
            (profile.s_at_min_slope - profile.predicted_s_c).abs() < 0.05,
            "h={}: flattening at {} vs predicted {}",
            profile.h,
            profile.s_at_min_slope,
            profile.predicted_s_c
        );
        assert!(profile.s_at_min_slope > previous, "flattening not monotone in h");
        previous = profile.s_at_min_slope;
    }
}

#[test]
fn regular_experiment_writes_level_json() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::synthetic(Experiment::Regular, 4, dir.path().to_path_buf());
    cfg.set_param("n", 60);
    cfg.set_param("p_target", 8);
    cfg.set_param("n_random_starts", 2);
    let outcome = experiment_cli::run(&cfg).unwrap();
    assert_eq!(outcome.files.len(), 2);
    let levels: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("regular_levels.json")).unwrap())
            .unwrap();
    assert_eq!(levels["levels"].as_array().unwrap().len(), 3);
    assert!(levels["levels"][2]["result"]["converged"].as_bool().unwrap());
    assert!((levels["levels"][2]["tau"].as_f64().unwrap() - 9.76).abs() < 0.05);
}

#[test]
fn compare_experiment_small_grid_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::synthetic(Experiment::CompareSchedules, 1, dir.path().to_path_buf());
    cfg.set_param("n", 128);
    cfg.set_param("tau_list", "8,16,32");
    cfg.set_param("p_ladder", 8);
    cfg.set_param("gap_grid", "0.2,0.8");
    let outcome = experiment_cli::run(&cfg).unwrap();
    assert_eq!(outcome.files.len(), 2);
    let csv = std::fs::read_to_string(dir.path().join("compare_schedules.csv")).unwrap();
    assert!(csv.starts_with("schedule_name,tau,p,dt,eps_res,config_hash"));
    // 3 taus x 4 baseline schedules + 3 ladder levels.
    assert_eq!(csv.lines().count() - 1, 15);
    let fits = std::fs::read_to_string(dir.path().join("compare_fits.json")).unwrap();
    let fits: serde_json::Value = serde_json::from_str(&fits).unwrap();
    assert!(fits["linear_qa"]["exponent"].as_f64().unwrap() < -0.3);
}
