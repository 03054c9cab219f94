//! End-to-end checks of the binary: flag surface, schemas, exit codes and
//! byte determinism.

use std::process::{Command, Output};

fn sswkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sswkit"))
        .args(args)
        .env_remove("SSWKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sswkit(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn count_examples() {
    let out = stdout(&["count", "-L", "3", "-J", "2", "-W", "2", "--n", "5"]);
    assert_eq!(out, "n,method,count\n5,fsm,10\n");

    // off-grid lengths count zero
    let out = stdout(&["count", "-L", "3", "-J", "2", "-W", "2", "--n", "4"]);
    assert_eq!(out, "n,method,count\n4,fsm,0\n");

    // refined Goulden-Jackson agrees with the oracle at n = L + J
    let rgj = stdout(&["count", "-L", "4", "-J", "2", "-W", "3", "--k", "1", "--method", "rgj"]);
    assert_eq!(rgj, "n,method,count\n6,rgj,11\n");
    let oracle =
        stdout(&["count", "-L", "4", "-J", "2", "-W", "3", "--n", "6", "--method", "oracle"]);
    assert_eq!(oracle, "n,method,count\n6,oracle,11\n");
}

#[test]
fn series_lists_grid_lengths() {
    let out = stdout(&["series", "-L", "3", "-J", "2", "-W", "2", "--k-max", "2"]);
    assert_eq!(out, "n,method,count\n3,fsm,4\n5,fsm,10\n7,fsm,24\n");
}

#[test]
fn capacity_schema() {
    let out = stdout(&["capacity", "-L", "4", "-J", "2", "-W", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("L,J,W,method,lambda,capacity"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("4,2,3,reduced,"), "{row}");
    assert!(row.ends_with("0.500000000000"), "{row}");
}

#[test]
fn verify_reports_zero_mismatches() {
    let out = sswkit(&["verify", "--l-max", "4", "--n-max", "12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "0 mismatches\n");
}

#[test]
fn corrupted_matrix_is_caught() {
    let out = sswkit(&["verify", "--l-max", "2", "--n-max", "6", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mismatch:"), "{text}");
    assert!(!text.contains("\n0 mismatches"), "{text}");
}

#[test]
fn noiseless_sweep_schema_and_orderings() {
    let out = stdout(&[
        "sweep", "--noiseless", "-L", "6", "-W", "3", "--J", "1..6", "--k", "0..10",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("L,J,W,n,rate,capacity"));
    // capacity is constant per J and non-decreasing in J for (6,J,3)
    let mut by_j: Vec<(u64, f64)> = Vec::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 6);
        let j: u64 = cells[1].parse().unwrap();
        let cap: f64 = cells[5].parse().unwrap();
        match by_j.last() {
            Some(&(last_j, last_cap)) if last_j == j => assert_eq!(last_cap, cap),
            _ => by_j.push((j, cap)),
        }
    }
    assert_eq!(by_j.len(), 6);
    for pair in by_j.windows(2) {
        assert!(pair[1].1 >= pair[0].1 - 1e-12, "{pair:?}");
    }

    // (8,J,7): the longer skip does not win
    let out = stdout(&["sweep", "--noiseless", "-L", "8", "-W", "7", "--J", "7,8", "--k", "0"]);
    let caps: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(5).unwrap().parse().unwrap())
        .collect();
    assert!(caps[0] > caps[1], "capacity(8,7,7) {} vs (8,8,7) {}", caps[0], caps[1]);
}

#[test]
fn noisy_sweep_schema_and_sandwich() {
    let out = stdout(&[
        "sweep", "--noisy", "--channel", "bsc", "-L", "3", "-J", "1", "-W", "2", "--grid", "5",
        "--restarts", "2",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("L,J,W,channel,param,lower_mgl,lower_zw,upper"));
    let mut rows = 0;
    for line in lines {
        let cells: Vec<f64> =
            line.split(',').skip(4).map(|c| c.parse().unwrap()).collect();
        let (_, mgl, zw, upper) = (cells[0], cells[1], cells[2], cells[3]);
        assert!(mgl.max(zw) <= upper + 1e-9, "{line}");
        assert!(zw >= mgl - 1e-9, "{line}");
        rows += 1;
    }
    assert_eq!(rows, 5);
}

#[test]
fn byte_determinism() {
    let args = [
        "sweep", "--noisy", "--channel", "bec", "-L", "3", "-J", "1", "-W", "2", "--grid", "4",
        "--restarts", "2", "--seed", "9", "--format", "json",
    ];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second);

    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(parsed["meta"]["command"], "sweep");
    assert!(parsed["meta"]["version"].is_string());
    assert_eq!(parsed["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn bad_configs_exit_two() {
    // skip longer than window
    assert_eq!(sswkit(&["count", "-L", "2", "-J", "3", "-W", "1", "--n", "5"]).status.code(), Some(2));
    // missing length selector
    assert_eq!(sswkit(&["count", "-L", "3", "-J", "2", "-W", "2"]).status.code(), Some(2));
    // unknown flag (clap usage error)
    assert_eq!(sswkit(&["count", "--bogus"]).status.code(), Some(2));
    // oracle budget
    let out = sswkit(&["count", "-L", "25", "-J", "1", "-W", "2", "--n", "25", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(2));
    // noisy sweep without a channel
    let out = sswkit(&["sweep", "--noisy", "-L", "3", "-J", "1", "-W", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("sswkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counts.csv");
    let on_stdout = stdout(&["series", "-L", "4", "-J", "2", "-W", "3", "--k-max", "3"]);
    let out = sswkit(&[
        "series", "-L", "4", "-J", "2", "-W", "3", "--k-max", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), on_stdout);
    std::fs::remove_dir_all(&dir).ok();
}
