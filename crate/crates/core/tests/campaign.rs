//! Campaign artifact and CLI behavior: output shapes, repeat-run
//! determinism, localization trend, and process exit codes.

use std::fs;
use std::process::Command;

use wiener_linf::estimators::EstimatorKind;
use wiener_linf::experiments::{
    run_campaign, write_campaign, EpsilonSchedule, ExperimentConfig, PriorConfig,
};

fn bg_config(n_values: Vec<usize>, trials: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        prior: PriorConfig::Bg {
            s: 0.3,
            mean: 0.0,
            variance: 1.0,
        },
        noise_variance: 1.0,
        estimators: vec![
            EstimatorKind::WienerBg,
            EstimatorKind::PosteriorMean,
            EstimatorKind::GenieWiener,
            EstimatorKind::Identity,
        ],
        n_values,
        trials,
        seed,
        epsilon_schedule: EpsilonSchedule::default(),
        output_path: None,
        allow_large: false,
    }
}

#[test]
fn csv_and_json_artifacts_have_expected_shape() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("run");
    let cfg = bg_config(vec![64], 3, 7);
    let output = run_campaign(&cfg).unwrap();
    let (csv_path, json_path) = write_campaign(&output, &base).unwrap();

    let csv_text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,trial,estimator,linf,l2,argmax_index,argmax_label,normalized_linf,in_typical_set"
    );
    assert_eq!(csv_text.lines().count(), 1 + 3 * 4);

    let json_text = fs::read_to_string(&json_path).unwrap();
    let summary: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    assert_eq!(summary["schema_version"], "summary/v1");
    assert_eq!(summary["config"]["seed"], 7);
    assert_eq!(summary["per_n"][0]["n"], 64);
    assert!(summary["per_n"][0]["estimators"].as_array().unwrap().len() == 4);
    assert!(summary["per_n"][0]["wiener_to_genie_ratio"].is_number());
}

#[test]
fn repeat_runs_produce_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = bg_config(vec![64, 128], 5, 99);

    let out_a = run_campaign(&cfg).unwrap();
    let (csv_a, json_a) = write_campaign(&out_a, &dir.path().join("a")).unwrap();
    let out_b = run_campaign(&cfg).unwrap();
    let (csv_b, json_b) = write_campaign(&out_b, &dir.path().join("b")).unwrap();

    assert_eq!(fs::read(csv_a).unwrap(), fs::read(csv_b).unwrap());
    assert_eq!(fs::read(json_a).unwrap(), fs::read(json_b).unwrap());
}

#[test]
fn lemma1_statistic_approaches_one_with_dimension() {
    let cfg = wiener_linf::experiments::Lemma1Config {
        n_values: vec![100, 1_000_000],
        variance: 1.0,
        mean: 0.0,
        trials: 100,
        seed: 808,
        output_path: None,
        allow_large: false,
    };
    let output = wiener_linf::experiments::lemma1_campaign(&cfg).unwrap();
    let small = output.cells[0].mean;
    let large = output.cells[1].mean;
    assert!(
        (large - 1.0).abs() < (small - 1.0).abs(),
        "normalized max at n=1e6 ({large}) not closer to 1 than at n=1e2 ({small})"
    );
}

#[test]
fn localization_frequency_rises_with_dimension() {
    let cfg = bg_config(vec![1_000, 10_000, 100_000], 100, 1234);
    let output = run_campaign(&cfg).unwrap();
    let cells: Vec<(f64, f64)> = output
        .summary
        .per_n
        .iter()
        .map(|p| {
            let wiener = p
                .estimators
                .iter()
                .find(|c| c.estimator == EstimatorKind::WienerBg)
                .unwrap();
            (wiener.localization_frequency, wiener.localization_se)
        })
        .collect();
    for window in cells.windows(2) {
        let (lo_f, lo_se) = window[0];
        let (hi_f, hi_se) = window[1];
        let slack = 2.0 * (lo_se * lo_se + hi_se * hi_se).sqrt();
        assert!(
            hi_f >= lo_f - slack,
            "localization fell beyond 2 SE: {lo_f} -> {hi_f} (slack {slack})"
        );
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wiener-linf"))
}

#[test]
fn cli_simulate_runs_and_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("exp.json");
    fs::write(
        &config_path,
        r#"{
            "prior": {"type": "bg", "s": 0.3, "mean": 0.0, "variance": 1.0},
            "noise_variance": 1.0,
            "estimators": ["wiener_bg", "identity"],
            "n_values": [64],
            "trials": 2,
            "seed": 5
        }"#,
    )
    .unwrap();
    let out_base = dir.path().join("results").join("run1");
    let status = binary()
        .args(["simulate", "--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(&out_base)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out_base.with_file_name("run1.csv").exists());
    assert!(out_base.with_file_name("run1.json").exists());
}

#[test]
fn cli_config_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad.json");
    fs::write(
        &config_path,
        r#"{
            "prior": {"type": "bg", "s": 0.3, "mean": 0.0, "variance": 1.0},
            "noise_variance": 1.0,
            "estimators": ["wiener_bg"],
            "trials": 2,
            "seed": 5,
            "unexpected_key": 1
        }"#,
    )
    .unwrap();
    let status = binary()
        .args(["simulate", "--config"])
        .arg(&config_path)
        .args(["--out", "unused"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // Estimator/prior mismatch also maps to a config error.
    let config_path = dir.path().join("mismatch.json");
    fs::write(
        &config_path,
        r#"{
            "prior": {"type": "bg", "s": 0.3, "mean": 0.0, "variance": 1.0},
            "noise_variance": 1.0,
            "estimators": ["wiener_gm"],
            "n_values": [64],
            "trials": 2,
            "seed": 5
        }"#,
    )
    .unwrap();
    let status = binary()
        .args(["simulate", "--config"])
        .arg(&config_path)
        .args(["--out", "unused"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn cli_io_errors_exit_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("exp.json");
    fs::write(
        &config_path,
        r#"{
            "prior": {"type": "bg", "s": 0.3, "mean": 0.0, "variance": 1.0},
            "noise_variance": 1.0,
            "estimators": ["wiener_bg"],
            "n_values": [64],
            "trials": 1,
            "seed": 5
        }"#,
    )
    .unwrap();
    // Output path routed through an existing file: directory creation fails.
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "occupied").unwrap();
    let out_base = blocker.join("run");
    let status = binary()
        .args(["simulate", "--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(&out_base)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // Missing config file is an I/O failure too.
    let status = binary()
        .args(["simulate", "--config"])
        .arg(dir.path().join("nope.json"))
        .args(["--out", "unused"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn cli_ratio_subcommand_reports_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("ratio.json");
    fs::write(
        &config_path,
        r#"{
            "prior": {"type": "gm", "components": [
                {"weight": 0.5, "mean": 0.0, "variance": 1.0},
                {"weight": 0.5, "mean": 0.0, "variance": 0.25}
            ]},
            "noise_variance": 1.0,
            "estimators": ["wiener_gm", "genie_wiener"],
            "n_values": [256],
            "trials": 4,
            "seed": 21
        }"#,
    )
    .unwrap();
    let out_base = dir.path().join("ratio_out");
    let output = binary()
        .args(["ratio", "--config"])
        .arg(&config_path)
        .args(["--out"])
        .arg(&out_base)
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("wiener/genie ratio"), "stdout: {stdout}");
    let json: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(out_base.with_file_name("ratio_out.json")).unwrap(),
    )
    .unwrap();
    assert!(json["per_n"][0]["wiener_to_genie_ratio"].is_number());

    // Without the genie the subcommand is a config error.
    let bad_config = dir.path().join("ratio_bad.json");
    fs::write(
        &bad_config,
        r#"{
            "prior": {"type": "gm", "components": [
                {"weight": 1.0, "mean": 0.0, "variance": 1.0}
            ]},
            "noise_variance": 1.0,
            "estimators": ["wiener_gm"],
            "n_values": [256],
            "trials": 4,
            "seed": 21
        }"#,
    )
    .unwrap();
    let status = binary()
        .args(["ratio", "--config"])
        .arg(&bad_config)
        .args(["--out", "unused"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn cli_lemma1_and_oracle_subcommands_run() {
    let dir = tempfile::tempdir().unwrap();
    let lemma_cfg = dir.path().join("lemma1.json");
    fs::write(
        &lemma_cfg,
        r#"{"n_values": [100, 1000], "trials": 4, "seed": 11}"#,
    )
    .unwrap();
    let out_base = dir.path().join("lemma1_out");
    let status = binary()
        .args(["lemma1", "--config"])
        .arg(&lemma_cfg)
        .args(["--out"])
        .arg(&out_base)
        .args(["--trials", "3"])
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out_base.with_file_name("lemma1_out.json").exists());
    // The --trials override shows up in the artifacts: header plus 2 n
    // values × 3 trials.
    let csv_text = fs::read_to_string(out_base.with_file_name("lemma1_out.csv")).unwrap();
    assert_eq!(csv_text.lines().count(), 1 + 2 * 3);
    let json: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(out_base.with_file_name("lemma1_out.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(json["config"]["trials"], 3);

    let oracle_cfg = dir.path().join("oracle.json");
    fs::write(
        &oracle_cfg,
        r#"{
            "prior": {"type": "bg", "s": 0.4, "mean": 0.0, "variance": 1.0},
            "noise_variance": 1.0,
            "n": 4,
            "trials": 2,
            "seed": 3,
            "posterior_samples": 128,
            "iterations": 50
        }"#,
    )
    .unwrap();
    let out_base = dir.path().join("oracle_out");
    let status = binary()
        .args(["oracle", "--config"])
        .arg(&oracle_cfg)
        .args(["--out"])
        .arg(&out_base)
        .args(["--iterations", "40"])
        .status()
        .unwrap();
    assert!(status.success());
    let json: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(out_base.with_file_name("oracle_out.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(json["schema_version"], "oracle/v1");
    assert_eq!(json["config"]["iterations"], 40);
    assert_eq!(json["cells"].as_array().unwrap().len(), 3);
}
