use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn tclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tclab"))
        .args(args)
        .env_remove("TCLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tclab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Header plus rows of a CSV document without quoted fields.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn spectrum_vacuum_column_is_flat_below_one() {
    let (header, rows) = csv(&stdout(&[
        "spectrum", "--M", "8", "--k-max", "1", "--g-max", "0.9", "--g-steps", "9",
    ]));
    assert_eq!(header, ["g", "k", "E_k"]);
    assert_eq!(rows.len(), 20);
    for row in rows.iter().filter(|r| r[1] == "0") {
        assert_eq!(row[2], "-40");
    }
    // g outer, k inner
    assert_eq!(rows[0][..2], ["0", "0"]);
    assert_eq!(rows[1][..2], ["0", "1"]);
}

#[test]
fn crossing_table_starts_at_one_and_increases() {
    let (header, rows) = csv(&stdout(&["crossings", "--M", "8", "--k-max", "120"]));
    assert_eq!(header, ["k", "g_k", "g_tilde_k", "rel_gap", "error"]);
    let g: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!((g[0] - 1.0).abs() <= 1e-9);
    assert!(g.windows(2).all(|w| w[1] > w[0]));
    for row in &rows[80..] {
        let rel: f64 = row[3].parse().unwrap();
        assert!(rel.abs() <= 0.01, "{row:?}");
    }
}

#[test]
fn default_sweep_matches_figure_expectations() {
    let (header, rows) = csv(&stdout(&["sweep", "--observables", "kstar_per_M,qcd,bounds"]));
    assert_eq!(rows.len(), 8 * 501);
    let (g_col, q_col) = (column(&header, "g"), column(&header, "qcd"));
    let k_col = column(&header, "kstar_per_M");
    let (lo, hi) = (column(&header, "lower_bound"), column(&header, "upper_bound"));
    for row in &rows {
        let g: f64 = row[g_col].parse().unwrap();
        let qcd: f64 = row[q_col].parse().unwrap();
        if g < 1.0 {
            assert_eq!(qcd, 0.0);
        }
        // for M = 2 the integer k* alone moves k*/M by 5% near g = 2
        if g >= 2.0 && row[0] != "2" {
            let k: f64 = row[k_col].parse().unwrap();
            let target = 10.0 * g * g / 4.0;
            assert!((k - target).abs() <= 0.05 * target + 1e-12, "{row:?}");
        }
        let (l, u): (f64, f64) = (row[lo].parse().unwrap(), row[hi].parse().unwrap());
        assert!(l <= u + 1e-10);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let args = |threads: &'static str, name: &str| {
        let path = dir.path().join(name);
        let out = tclab(&[
            "sweep", "--M", "2..6", "--g-steps", "60", "--threads", threads, "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        fs::read(path).unwrap()
    };
    let one = args("1", "one.csv");
    assert_eq!(one, args("4", "four.csv"));
    assert_eq!(one, args("4", "again.csv"));
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(&config, "# small run\nM = 4\neta = 2\ng-steps = 4\nobservables = kstar\n").unwrap();
    let (header, rows) = csv(&stdout(&[
        "sweep", "--config", config.to_str().unwrap(), "--eta", "10",
    ]));
    assert_eq!(header, ["M", "g", "kstar"]);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[0] == "4"));
    // k* at g = 5 for M = 4 is about ηg²M/4 = 250 with η = 10, 50 with η = 2
    let k: f64 = rows[4][2].parse().unwrap();
    assert!(k > 200.0);
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tclab"))
        .args(["sweep", "--M", "3", "--g-steps", "4", "--observables", "energy"])
        .env("TCLAB_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_tclab"))
        .args(["sweep", "--M", "3", "--g-steps", "4"])
        .env("TCLAB_THREADS", "many")
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

#[test]
fn separability_reports() {
    let below: Value = serde_json::from_str(&stdout(&["separability", "--M", "8", "--g", "0.5"])).unwrap();
    assert_eq!(below["ppt_entangled"], false);
    assert_eq!(below["kstar"], 0);
    let above: Value = serde_json::from_str(&stdout(&["separability", "--M", "8", "--g", "1.5"])).unwrap();
    assert_eq!(above["ppt_entangled"], true);
    let lower = above["bounds"]["lower"].as_f64().unwrap();
    let upper = above["bounds"]["upper"].as_f64().unwrap();
    assert!(lower <= upper);
    assert_eq!(above["weights"].as_array().unwrap().len(), 9);
    assert_eq!(above["rescaled_qcd"], above["bounds"]["upper"]);
}

#[test]
fn json_rows_carry_column_names() {
    let text = stdout(&[
        "sweep", "--M", "2", "--g-steps", "2", "--observables", "purity,ppt", "--format", "json",
    ]);
    let rows: Value = serde_json::from_str(&text).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["purity"], 1.0);
    assert_eq!(rows[2]["ppt_entangled"], true);
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["M", "g", "purity", "ppt_entangled", "ppt_min_eigenvalue", "ppt_marginal"]);
}

#[test]
fn csv_round_trips_at_requested_precision() {
    let text = stdout(&["sweep", "--M", "5", "--g-steps", "10", "--observables", "energy,rescaled_qcd"]);
    let (_, rows) = csv(&text);
    let fine = stdout(&[
        "sweep", "--M", "5", "--g-steps", "10", "--observables", "energy,rescaled_qcd",
        "--precision", "17",
    ]);
    let (_, exact) = csv(&fine);
    for (a, b) in rows.iter().zip(&exact) {
        for (x, y) in a.iter().zip(b).skip(2) {
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            assert!((x - y).abs() <= 1e-11 * y.abs().max(1e-300));
        }
    }
}

#[test]
fn ppt_beyond_cap_marks_cells_and_continues() {
    let (_, rows) = csv(&stdout(&[
        "sweep", "--M", "13", "--g-steps", "2", "--observables", "qcd,ppt",
    ]));
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_ne!(row[2], "ERR");
        assert_eq!(row[3..], ["ERR", "ERR", "ERR"]);
    }
}

#[test]
fn reference_route_matches_fast_path() {
    let args = ["sweep", "--M", "1..2", "--g-max", "1.5", "--g-steps", "3", "--observables", "energy,kstar,qcd,rescaled_qcd"];
    let (_, fast) = csv(&stdout(&args));
    let mut with_ref = args.to_vec();
    with_ref.push("--reference");
    let (_, slow) = csv(&stdout(&with_ref));
    for (a, b) in fast.iter().zip(&slow) {
        assert_eq!(a[3], b[3]);
        for i in [2, 4, 5] {
            let (x, y): (f64, f64) = (a[i].parse().unwrap(), b[i].parse().unwrap());
            assert!((x - y).abs() <= 1e-9, "{a:?} {b:?}");
        }
    }
}

#[test]
fn failures_are_machine_readable() {
    for args in [
        vec!["sweep", "--g-min", "2", "--g-max", "1"],
        vec!["sweep", "--observables", "spin"],
        vec!["separability", "--M", "8"],
        vec!["spectrum", "--M", "2..4"],
        vec!["sweep", "--config", "/nonexistent/run.conf"],
    ] {
        let out = tclab(&args);
        assert!(!out.status.success());
        let line = String::from_utf8(out.stderr).unwrap();
        let err: Value = serde_json::from_str(line.lines().last().unwrap()).unwrap();
        assert!(err["error"].is_string() && err["message"].is_string(), "{args:?}");
    }
}
