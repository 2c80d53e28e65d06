use std::path::Path;
use std::process::{Command, Output};

use qaoa_mis::cli::{RunReport, SweepReport};
use qaoa_mis::prelude::*;

fn qaoa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaoa"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("spawn qaoa")
}

fn read_run(path: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn run_mis_writes_full_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let res = qaoa(&[
        "run", "--problem", "mis", "--graph", "square-ring", "--p", "6", "--restarts", "50", "--seed", "7",
        "--init", "0000", "--out", out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let report = read_run(&out);

    assert_eq!(report.averaged_distribution.len(), 16);
    let bits: Vec<&str> = report.averaged_distribution.iter().map(|e| e.bitstring.as_str()).collect();
    assert_eq!(bits[0], "0000");
    assert_eq!(bits[5], "0101");
    assert_eq!(bits[15], "1111");
    assert!(report.feasibility_leakage < 1e-10);
    let total: f64 = report.averaged_distribution.iter().map(|e| e.probability).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(report.timestamp, None);
    assert_eq!((report.p, report.restarts, report.seed), (6, 50, 7));
    assert_eq!(report.initial_state, "0000");
    assert_eq!(report.c_max, 2.0);

    // the stored ratio must be reproducible from the stored angles
    let ring = NamedGraph::SquareRing.build();
    let inst = Instance::new(Problem::Mis, &ring, Some("0000".parse().unwrap())).unwrap();
    let recomputed = inst.expectation(&report.best_params).unwrap() / report.c_max;
    assert!((recomputed - report.approximation_ratio).abs() < 1e-12);
    assert!((report.best_expectation / report.c_max - report.approximation_ratio).abs() < 1e-15);
}

#[test]
fn run_maxcut_k33_concentrates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let res = qaoa(&[
        "run", "--problem", "maxcut", "--graph", "k33", "--p", "15", "--restarts", "50", "--seed", "7", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let report = read_run(&out);
    assert_eq!(report.initial_state, "plus");
    assert_eq!(report.averaged_distribution.len(), 64);
    let mass = report.averaged_probability("000111") + report.averaged_probability("111000");
    assert!(mass >= 0.9, "mass {mass}");
    assert!(String::from_utf8_lossy(&res.stdout).contains("ratio"));
}

#[test]
fn infeasible_init_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let res = qaoa(&[
        "run", "--problem", "mis", "--graph", "square-ring", "--p", "1", "--init", "0011", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&res.stderr).contains("(1,2)"));
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qaoa(&["run", "--problem", "mis", "--graph", "petersen", "--p", "1", "--out", "x"]).status.code(), Some(2));
    assert_eq!(qaoa(&["run", "--problem", "tsp", "--graph", "k23", "--p", "1", "--out", "x"]).status.code(), Some(2));
    assert_eq!(qaoa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("s.csv");
    let res = qaoa(&["sweep", "--init", "0000", "--beta-grid", "200", "--out", csv_path.to_str().unwrap()]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));

    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["beta", "ratio"]);
    let rows: Vec<(f64, f64)> = rdr.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 200);
    assert_eq!(rows[0].0, 0.0);
    assert!((rows[199].0 - std::f64::consts::PI).abs() < 1e-15);

    let summary: SweepReport =
        serde_json::from_str(&std::fs::read_to_string(csv_path.with_extension("json")).unwrap()).unwrap();
    assert_eq!(summary.initial_state, "0000");
    assert_eq!(summary.values.len(), 200);
    let csv_max = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(summary.max_value, csv_max);
    assert!((summary.max_value - 0.89).abs() < 0.01);
}

#[test]
fn oracle_prints_json() {
    let res = qaoa(&["oracle", "--problem", "mis", "--graph", "k23"]);
    assert!(res.status.success());
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(report, serde_json::json!({"problem": "mis", "optimal_value": 3.0, "optimizers": ["11100"]}));
}

#[test]
fn edge_list_file_graph() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("path.txt");
    std::fs::write(&graph, "# path on three nodes\n3 2\n1 2\n2 3\n").unwrap();
    let arg = format!("@{}", graph.display());

    let res = qaoa(&["oracle", "--problem", "mis", "--graph", &arg]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(report["optimal_value"], 2.0);
    assert_eq!(report["optimizers"], serde_json::json!(["101"]));

    let out = dir.path().join("r.json");
    let res = qaoa(&["run", "--problem", "mis", "--graph", &arg, "--p", "2", "--restarts", "4", "--out", out.to_str().unwrap()]);
    assert!(res.status.success());
    let report = read_run(&out);
    assert_eq!(report.graph, arg);
    assert_eq!(report.averaged_distribution.len(), 8);
    assert!(report.feasibility_leakage < 1e-10);

    let missing = format!("@{}", dir.path().join("nope.txt").display());
    assert_eq!(qaoa(&["oracle", "--problem", "mis", "--graph", &missing]).status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for path in &paths {
        let res = qaoa(&["run", "--problem", "maxcut", "--graph", "k23", "--p", "3", "--restarts", "8", "--out", path.to_str().unwrap()]);
        assert!(res.status.success());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}
