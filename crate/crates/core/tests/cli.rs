use std::path::Path;
use std::process::Command;

use weak_dmd::bench::toy_exact_eigenvalues;
use weak_dmd::cli::{load_snapshots_csv, run_with, CsvLayout};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["weak-dmd"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn spectrum_rows(csv: &str) -> Vec<(f64, f64)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("index,re,im"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

fn gen_toy(dir: &Path, extra: &[&str]) -> String {
    let out = dir.to_str().unwrap();
    let mut args = vec!["gen", "--problem", "toy", "--grid", "nonuniform:200", "--seed", "7", "--output", out];
    args.extend_from_slice(extra);
    let (code, _, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    dir.join("snapshots.csv").to_str().unwrap().to_string()
}

#[test]
fn no_arguments_prints_usage_and_exits_2() {
    let output = Command::new(env!("CARGO_BIN_EXE_weak-dmd")).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("Usage"));
}

#[test]
fn runtime_error_is_one_line_with_category() {
    let output = Command::new(env!("CARGO_BIN_EXE_weak-dmd"))
        .args(["eigs", "/nonexistent/data.csv"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8(output.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: IoError: "), "{err}");
}

#[test]
fn gen_then_eigs_finds_toy_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &[]);
    let (code, out, err) = run(&["eigs", &data]);
    assert_eq!(code, 0, "{err}");
    let rows = spectrum_rows(&out);
    let exact = toy_exact_eigenvalues()[0];
    assert!((rows[0].0 - exact.re).abs() < 0.02 && (rows[0].1 - exact.im).abs() < 0.02, "{rows:?}");
}

#[test]
fn commands_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let noise = ["--sigma", "0.2"];
    let da = gen_toy(a.path(), &noise);
    let db = gen_toy(b.path(), &noise);
    assert_eq!(std::fs::read(&da).unwrap(), std::fs::read(&db).unwrap());
    assert_eq!(run(&["eigs", &da]).1, run(&["eigs", &db]).1);
}

#[test]
fn gen_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &["--sigma", "0.2"]);
    let loaded = load_snapshots_csv(&data, CsvLayout::TimeRows).unwrap();
    let (_, stdout, _) = run(&["gen", "--problem", "toy", "--grid", "nonuniform:200", "--seed", "7", "--sigma", "0.2"]);
    let again = weak_dmd::cli::csvio::read_snapshots(stdout.as_bytes(), CsvLayout::TimeRows).unwrap();
    assert_eq!(loaded, again);
    assert_eq!(loaded.n_samples(), 200);
}

#[test]
fn fit_writes_summary_spectrum_and_modes() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &[]);
    let out = dir.path().join("fit");
    let (code, stdout, err) = run(&["fit", &data, "--output", out.to_str().unwrap(), "--energy", "0.9999"]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("rank = 2"), "{stdout}");
    let spectrum = std::fs::read_to_string(out.join("spectrum.csv")).unwrap();
    assert_eq!(spectrum_rows(&spectrum).len(), 2);
    assert!(std::fs::read_to_string(out.join("summary.txt")).unwrap().contains("residual_rms"));
    let modes = std::fs::read_to_string(out.join("modes.csv")).unwrap();
    assert_eq!(modes.lines().count(), 1 + 2 * 2);
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &[]);
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "window = 0:20\ntrial.counts = 40\ntrial.overlaps = 1.5\ntest.counts = 80\nenergy = 0.9999\n").unwrap();
    let (code, out, err) = run(&["eigs", &data, "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(spectrum_rows(&out).len(), 2);

    std::fs::write(&cfg, "trial.count = 40\n").unwrap();
    let (code, _, err) = run(&["eigs", &data, "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: ConfigError: "), "{err}");

    let (code, _, err) = run(&["eigs", &data, "--window", "5:1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: InvalidWindow: "), "{err}");
}

#[test]
fn reconstruct_and_forecast_files() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &[]);
    let out = dir.path().to_str().unwrap();
    let (code, _, err) = run(&["reconstruct", &data, "--grid", "uniform:50", "--output", out]);
    assert_eq!(code, 0, "{err}");
    let rec = load_snapshots_csv(dir.path().join("reconstruction.csv"), CsvLayout::TimeRows).unwrap();
    assert_eq!(rec.n_samples(), 50);

    let truth_dir = dir.path().join("truth");
    let (code, _, err) = run(&[
        "gen", "--problem", "toy", "--grid", "uniform:11", "--t-end", "1", "--output", truth_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    // forecast from t = 0.9 in steps of 0.01 lands on no truth time: mismatch
    let truth = truth_dir.join("snapshots.csv");
    let (code, _, err) = run(&[
        "forecast", &data, "--window", "0:0.9", "--dt", "0.1", "--steps", "1", "--start", "0.9",
        "--truth", truth.to_str().unwrap(), "--output", out,
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("GridMismatch"), "{err}");
}

#[test]
fn forecast_against_truth() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &[]);
    let truth_dir = dir.path().join("truth");
    let (code, _, err) = run(&[
        "gen", "--problem", "toy", "--grid", "uniform:101", "--t-end", "1", "--output", truth_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    // keep only t > 0 so the forecast from t = 0 lines up with the truth rows
    let text = std::fs::read_to_string(truth_dir.join("snapshots.csv")).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(1);
    let truth = truth_dir.join("future.csv");
    std::fs::write(&truth, lines.join("\n")).unwrap();
    let out = dir.path().join("fc");
    let (code, _, err) = run(&[
        "forecast", &data, "--start", "0", "--dt", "0.01", "--steps", "100", "--truth", truth.to_str().unwrap(),
        "--output", out.to_str().unwrap(), "--space", "full",
    ]);
    assert_eq!(code, 0, "{err}");
    let errors = std::fs::read_to_string(out.join("forecast_error.csv")).unwrap();
    let values: Vec<f64> = errors.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 100);
    assert!(values.iter().all(|&e| e < 0.2), "{values:?}");
}

#[test]
fn sweep_and_oracle_tables() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_toy(dir.path(), &[]);
    let (code, _, err) = run(&["sweep", &data, "--test-sizes", "20,40", "--output", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let sweep = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(sweep.starts_with("test_size,index,re,im\n"));
    assert!(sweep.lines().skip(1).all(|l| l.starts_with("20,") || l.starts_with("40,")));

    let (code, out, _) = run(&["oracle", "--t2", "100"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("t2,index,re,im\n100,0,"));
}

#[test]
fn state_rows_layout_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    std::fs::write(&path, "t,0,1,2\nx,1,2\n").unwrap();
    let (code, _, err) = run(&["eigs", path.to_str().unwrap(), "--layout", "state-rows"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: ParseError: "), "{err}");

    std::fs::write(&path, "0,1\n1,2\n1,3\n").unwrap();
    let (code, _, err) = run(&["eigs", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: DuplicateTime: "), "{err}");
}
