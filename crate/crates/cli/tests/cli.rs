use std::path::Path;
use std::process::{Command, Output};

fn anires(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anires"))
        .args(args)
        .env_remove("ANIRES_QUAD_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = anires(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn model_coefficient_counts() {
    let two = stdout(&["model-coeffs", "--kmax", "2"]);
    let rows: Vec<&str> = two.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().any(|r| r.starts_with("2,2,9,8,")));
    let zero = stdout(&["model-coeffs", "--kmax", "0"]);
    assert_eq!(zero.lines().skip(1).collect::<Vec<_>>(), vec!["0,0,1,1,1"]);
    assert_eq!(stdout(&["model-coeffs", "--kmax", "12"]).lines().count(), 92);
}

#[test]
fn rs_listing_equals_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rs.csv");
    let out = anires(&["qm-coeffs", "--kmax", "12", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), fixture("table1.csv"));
}

#[test]
fn crossover_reported() {
    let out = anires(&["model-crossover", "--delta", "1e-2", "--kmax", "4096", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let k = v["meta"]["k_cross"].as_u64().unwrap();
    assert!((33..=300).contains(&k), "{k}");
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        vec![
            "qm-resum".to_string(),
            "--g4".into(),
            "0.1,1.0".into(),
            "--delta-range".into(),
            "-1:1:0.25".into(),
            "--orders".into(),
            "4,6".into(),
            "--out".into(),
            dir.path().join(name).to_str().unwrap().to_string(),
        ]
    };
    for name in ["a.csv", "b.csv"] {
        let a: Vec<String> = args(name);
        let out = anires(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 9 * 2);
    assert!(text.lines().nth(1).unwrap().starts_with("0.1,-1.0,4,3,"));
}

#[test]
fn table_of_variational_energies() {
    let csv = stdout(&["vpt", "--g4", "0.1", "--delta", "0.5", "--orders", "5"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,delta,g_over_4,omega_k,W_k,candidate_kind"));
    let f: Vec<&str> = lines.next().unwrap().split(',').collect();
    let w: f64 = f[4].parse().unwrap();
    assert!((w - 1.134734).abs() < 2e-6, "{w}");
    assert_eq!(f[5], "extremum");
}

#[test]
fn raw_coupling_matches_quartered() {
    let a = stdout(&["model-resum", "--g", "1", "--delta", "0.5", "--orders", "2,4,6,8"]);
    let b = stdout(&["model-resum", "--g4", "0.25", "--delta", "0.5", "--orders", "2,4,6,8"]);
    assert_eq!(a, b);
    let errs: Vec<f64> = a.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{errs:?}");
}

#[test]
fn partial_failures_exit_nonzero() {
    let out = anires(&["model-eval", "--g4", "0.25", "--delta", "0,3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("delta=3"), "{err}");
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 2);
}

#[test]
fn invalid_input_is_rejected() {
    for args in [
        vec!["model-eval", "--g4", "-1", "--delta", "0"],
        vec!["model-eval", "--g4", "1", "--delta-range", "1:0:0.1"],
        vec!["qm-resum", "--g4", "1", "--delta", "0", "--sigma", "0"],
        vec!["model-crossover", "--delta", "0.1", "--kmax", "8"],
    ] {
        let out = anires(&args);
        assert!(!out.status.success(), "{args:?}");
    }
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_anires"))
        .args(["model-eval", "--g4", "0.25", "--delta", "0"])
        .env("ANIRES_QUAD_TOL", "-1")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_anires"))
        .args(["model-eval", "--g4", "0.25", "--delta", "0"])
        .env("ANIRES_QUAD_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn figures_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = anires(&["figures", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("vpt_table.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 2 * 5 * 6);
    assert_eq!(std::fs::read_to_string(dir.path().join("rs_coefficients.csv")).unwrap(), fixture("table1.csv"));
}
