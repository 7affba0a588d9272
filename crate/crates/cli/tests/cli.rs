//! End-to-end contract tests for the `ceilsim` binary: exit codes, config
//! handling, CSV schemas and determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ceilsim"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ceilsim-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn bad_configs_exit_with_code_2() {
    let dir = tmp_dir("badcfg");
    let bad_key = dir.join("bad_key.json");
    fs::write(&bad_key, r#"{"radio": {"tx_power_db": 20}}"#).unwrap();
    let out = run(&["blockage-prob", "--config", bad_key.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tx_power_db"));

    let malformed = dir.join("malformed.json");
    fs::write(&malformed, "{ not json").unwrap();
    let out = run(&["simulate", "--config", malformed.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));

    let empty = dir.join("empty.json");
    fs::write(&empty, "").unwrap();
    let out = run(&["simulate", "--config", empty.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).to_string();
    for key in ["venue", "radio", "run", "blockage_prob"] {
        assert!(msg.contains(key), "missing '{key}' in: {msg}");
    }

    let out = run(&["simulate", "--set", "run.scenarios=[\"lunar\"]"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["simulate", "--set", "junk"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["simulate", "--set", "run.bogus=1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    // Propagated antenna validation: a zero beamwidth is rejected.
    let out = run(&["simulate", "--set", "run.ap_beamwidths_deg=[0.0]"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beamwidth"));
}

#[test]
fn quadrature_budget_exhaustion_exits_with_code_3() {
    let dir = tmp_dir("quad");
    let out = run(
        &[
            "blockage-prob",
            "--out",
            dir.to_str().unwrap(),
            "--set",
            "blockage.quadrature_budget=10",
            "--set",
            "blockage_prob.rb_count=1000",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quadrature"));
}

#[test]
fn dump_config_round_trips_and_matches_defaults() {
    let out = run(&["simulate", "--dump-config"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    // Feeding the dump back reproduces it byte for byte.
    let dir = tmp_dir("dump");
    let path = dir.join("dumped.json");
    fs::write(&path, &text).unwrap();
    let again = run(&["simulate", "--dump-config", "--config", path.to_str().unwrap()], &[]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
    // A defaults-only file is equivalent to no file at all.
    let brace = dir.join("brace.json");
    fs::write(&brace, "{}").unwrap();
    let from_brace = run(&["simulate", "--dump-config", "--config", brace.to_str().unwrap()], &[]);
    assert_eq!(String::from_utf8(from_brace.stdout).unwrap(), text);
    // Documented defaults appear in the dump.
    for needle in [
        "\"side_m\": 400.0",
        "\"ap_height_m\": 10.0",
        "\"tx_power_dbm\": 20.0",
        "\"bandwidth_hz\": 2000000000.0",
        "\"noise_figure_db\": 9.0",
        "\"sinr_threshold_db\": 5.0",
        "\"side_lobe_gain_db\": -10.0",
        "\"width_m\": 0.4",
        "\"height_above_ue_m\": 0.4",
    ] {
        assert!(text.contains(needle), "missing {needle}");
    }
    // Overrides land in the dump.
    let out = run(&["simulate", "--dump-config", "--seed", "99", "--set", "venue.side_m=123.5"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"seed\": 99"));
    assert!(text.contains("\"side_m\": 123.5"));
}

#[test]
fn blockage_prob_zero_density_collapses_to_self_blockage() {
    let dir = tmp_dir("bp");
    let out = run(&["blockage-prob", "--out", dir.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.join("blockage_prob.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("d_a_m,p_self,p_random_one,p_blocked"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        let d: f64 = cols[0].parse().unwrap();
        // rb_count defaults to 0, so the combined probability equals the
        // self-blockage column exactly, and vanishes inside the 7.5 m zone.
        assert_eq!(cols[1], cols[3], "row {line}");
        if d < 7.5 {
            assert_eq!(cols[3], "0", "row {line}");
        } else {
            assert_eq!(cols[3], "0.18716704181099886", "row {line}");
        }
        rows += 1;
    }
    assert_eq!(rows, 51);
}

#[test]
fn blockage_prob_validation_appends_matching_columns() {
    let dir = tmp_dir("bpval");
    let out = run(
        &[
            "blockage-prob",
            "--validate",
            "--out",
            dir.to_str().unwrap(),
            "--set",
            "blockage_prob.scenes=20000",
            "--set",
            "blockage_prob.d_max_m=60",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.join("blockage_prob.csv"));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("d_a_m,p_self,p_random_one,p_blocked,p_empirical,stderr")
    );
    let mut populated = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 6);
        if cols[4].is_empty() {
            continue;
        }
        populated += 1;
        let analytic: f64 = cols[3].parse().unwrap();
        let empirical: f64 = cols[4].parse().unwrap();
        assert!(
            (analytic - empirical).abs() <= 0.03,
            "disagreement in row {line}"
        );
    }
    assert!(populated >= 5, "expected several populated bins, got {populated}");
}

fn small_sim_args<'a>(dir: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec![
        "simulate",
        "--out",
        dir,
        "--set",
        "venue.side_m=200",
        "--set",
        "run.deltas_m=[40,80]",
        "--set",
        "run.trials=2000",
        "--set",
        "run.scenarios=[\"empty-hand\",\"crowded-pocket\"]",
    ];
    args.extend_from_slice(extra);
    args
}

#[test]
fn metrics_csv_schema_and_grid_shape() {
    let dir = tmp_dir("metrics");
    let d = dir.to_str().unwrap();
    let out = run(&small_sim_args(d, &[]), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(&dir.join("metrics.csv"));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("delta_m,omega_a_deg,omega_u_deg,scenario,coverage,coverage_ci,ase_bps_hz_m2,trials,seed")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4); // 2 deltas x 2 scenarios x 1 x 1
    for row in &rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 9);
        assert_eq!(cols[1], "28");
        assert_eq!(cols[2], "45");
        assert_eq!(cols[7], "2000");
        assert_eq!(cols[8], "1");
        let cov: f64 = cols[4].parse().unwrap();
        assert!((0.0..=1.0).contains(&cov));
        let ase: f64 = cols[6].parse().unwrap();
        assert!(ase >= 0.0);
    }
    assert!(rows.iter().any(|r| r.contains(",empty-hand,")));
    assert!(rows.iter().any(|r| r.contains(",crowded-pocket,")));
}

#[test]
fn sweep_writes_grid_and_optimal_files() {
    let dir = tmp_dir("sweep");
    let d = dir.to_str().unwrap();
    let out = run(
        &[
            "sweep",
            "--out",
            d,
            "--set",
            "venue.side_m=200",
            "--set",
            "run.deltas_m=[60]",
            "--set",
            "run.trials=1500",
            "--set",
            "run.ap_beamwidths_deg=[60,120]",
            "--set",
            "run.ue_beamwidths_deg=[45]",
            "--set",
            "run.scenarios=[\"empty-hand\"]",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let grid = read(&dir.join("sweep.csv"));
    assert_eq!(grid.lines().count(), 3);
    let optimal = read(&dir.join("optimal.csv"));
    let mut lines = optimal.lines();
    assert_eq!(
        lines.next(),
        Some("delta_m,scenario,best_omega_a_deg,best_omega_u_deg,peak_coverage,ase_at_peak")
    );
    let row = lines.next().unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[0], "60");
    assert_eq!(cols[1], "empty-hand");
    assert!(cols[2] == "60" || cols[2] == "120");
    assert_eq!(cols[3], "45");
    // The optimum is one of the grid rows.
    let peak: f64 = cols[4].parse().unwrap();
    let best_in_grid = grid
        .lines()
        .skip(1)
        .map(|r| r.split(',').nth(4).unwrap().parse::<f64>().unwrap())
        .fold(0.0f64, f64::max);
    assert_eq!(peak, best_in_grid);
}

#[test]
fn seed_override_changes_results() {
    let dir_a = tmp_dir("seed-a");
    let dir_b = tmp_dir("seed-b");
    let out = run(&small_sim_args(dir_a.to_str().unwrap(), &[]), &[]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&small_sim_args(dir_b.to_str().unwrap(), &["--seed", "77"]), &[]);
    assert_eq!(out.status.code(), Some(0));
    let a = read(&dir_a.join("metrics.csv"));
    let b = read(&dir_b.join("metrics.csv"));
    assert_ne!(a, b);
    assert!(b.lines().nth(1).unwrap().ends_with(",77"));
}
