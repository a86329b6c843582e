use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ewit_core::Witness;

fn ewit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewit"))
        .args(args)
        .env_remove("RAYON_NUM_THREADS")
        .output()
        .expect("spawn ewit")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_n2_exports_24_nonzeros() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w2.coord");
    let o = ewit(&["build", "--n", "2", "--out", path_str(&file)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("dim 16"));
    assert!(s.contains("nnz 24"));
    assert!(s.contains("min_eig -2.5"));

    let text = fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("%%DyadicCoordinate 16 24"));
    let back = Witness::read_coordinate(text.as_bytes()).unwrap();
    let original = ewit_core::build_witness(ewit_core::QubitCount::new(2).unwrap()).unwrap();
    assert_eq!(back.matrix(), original.matrix());
}

#[test]
fn build_rejects_zero_qubits() {
    let o = ewit(&["build", "--n", "0"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn build_unwritable_path_is_io_error() {
    let o = ewit(&["build", "--n", "1", "--out", "/nonexistent-dir/w.coord"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unknown_flag_is_invalid_input() {
    assert_eq!(code(&ewit(&["build", "--bogus"])), 1);
    assert_eq!(code(&ewit(&["frobnicate"])), 1);
}

#[test]
fn sweep_default_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = ewit(&["sweep", "--n", "2", "--out", path_str(&csv)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,min_eig_rho,min_eig_rho_gamma,witness_value,witness_formula"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 61);
    let at = |t: f64| rows.iter().find(|r| (r[0] - t).abs() < 1e-12).unwrap();
    assert!((at(1.0)[3] + 0.0625).abs() < 1e-12);
    assert!(at(1.0)[2] >= -1e-10);
    assert!(at(1.05)[2] < -1e-6);
}

#[test]
fn sweep_is_byte_deterministic() {
    let a = ewit(&["sweep", "--n", "2", "--steps", "7"]);
    let b = ewit(&["sweep", "--n", "2", "--steps", "7", "--threads", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_rejects_bad_grids() {
    assert_eq!(code(&ewit(&["sweep", "--n", "2", "--steps", "1"])), 1);
    assert_eq!(code(&ewit(&["sweep", "--n", "2", "--t-min", "1", "--t-max", "0"])), 1);
    assert_eq!(code(&ewit(&["sweep", "--n", "1"])), 1);
    assert_eq!(code(&ewit(&["sweep", "--n", "2", "--threads", "0"])), 1);
}

#[test]
fn certify_n2_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let o = ewit(&["certify", "--n", "2", "--out", path_str(&json)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["N"], 2);
    assert_eq!(v["spa"]["p_star"]["num"], 4);
    assert_eq!(v["spa"]["p_star"]["den"], 5);
    assert_eq!(v["negative_eig_count"], 1);
    assert_eq!(v["optimality_rank"], 16);
}

#[test]
fn certify_n1_marks_not_applicable() {
    let o = ewit(&["certify", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["indecomposability_point"], "not-applicable: decomposable case");
}

#[test]
fn certify_above_ceiling_is_invalid() {
    assert_eq!(code(&ewit(&["certify", "--n", "7"])), 1);
}

#[test]
fn probe_reports_nonnegative_minimum() {
    let o = ewit(&["probe", "--n", "2", "--restarts", "20", "--iters", "50", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let min: f64 = s
        .lines()
        .find_map(|l| l.strip_prefix("min_value "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(min >= -1e-8);
    assert_eq!(
        s,
        stdout(&ewit(&[
            "probe",
            "--n",
            "2",
            "--restarts",
            "20",
            "--iters",
            "50",
            "--seed",
            "7"
        ]))
    );
}

#[test]
fn plot_gamma_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let svg = dir.path().join("p.svg");
    assert_eq!(code(&ewit(&["sweep", "--n", "2", "--out", path_str(&csv)])), 0);
    let o = ewit(&[
        "plot",
        path_str(&csv),
        "--out",
        path_str(&svg),
        "--columns",
        "min_eig_rho_gamma,witness_value",
        "--normalize",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = fs::read(&svg).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    assert_eq!(text.matches("<polyline").count(), 2);
    assert!(text.contains("\"normalize\":true"));
    assert!(text.contains(">t</text>"));
    assert!(text.contains(">min_eig_rho_gamma</text>"));

    let again = dir.path().join("q.svg");
    ewit(&[
        "plot",
        path_str(&csv),
        "--out",
        path_str(&again),
        "--columns",
        "min_eig_rho_gamma,witness_value",
        "--normalize",
    ]);
    assert_eq!(first, fs::read(&again).unwrap());
}

#[test]
fn plot_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&ewit(&["plot", path_str(&empty), "--out", path_str(&svg)])), 2);

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "t,a\n0,1\n1,oops\n").unwrap();
    assert_eq!(code(&ewit(&["plot", path_str(&bad), "--out", path_str(&svg)])), 2);

    let good = dir.path().join("good.csv");
    fs::write(&good, "t,a\n0,1\n1,2\n").unwrap();
    assert_eq!(
        code(&ewit(&[
            "plot",
            path_str(&good),
            "--out",
            path_str(&svg),
            "--columns",
            "missing"
        ])),
        1
    );
    assert_eq!(code(&ewit(&["plot", path_str(&good), "--out", path_str(&svg)])), 0);
}
