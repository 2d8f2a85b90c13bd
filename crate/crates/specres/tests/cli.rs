//! End-to-end behaviour of the `specres` binary.

use std::process::{Command, Output};

fn specres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn list_names_every_case() {
    let o = specres(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["HILBERT_EVEN_ODD", "HANKEL_JXI", "T3D", "FINITE_HILBERT", "WEIGHTED_FINITE_HILBERT", "DIRAC_UPSIDE_DOWN"] {
        assert!(text.contains(id), "{id} missing");
    }
}

#[test]
fn xi_table_has_unit_modulus() {
    let o = specres(&["symbol", "xi", "--m", "1.5", "--range", "-8", "8", "--samples", "101"]);
    assert_eq!(o.status.code(), Some(0));
    let table = rows(&stdout(&o));
    assert_eq!(table.len(), 101);
    for r in &table {
        assert!((r[1].hypot(r[2]) - 1.0).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn stieltjes_quadrature_matches_closed_form() {
    let o = specres(&["mellin-symbol", "stieltjes", "--samples", "81"]);
    assert_eq!(o.status.code(), Some(0));
    let worst = rows(&stdout(&o)).iter().map(|r| r[5]).fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst:e}");
}

#[test]
fn verify_emits_a_passing_json_report() {
    let o = specres(&["verify", "FINITE_HILBERT", "--a", "-3", "--b", "7", "--n", "1024"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "specres-report/1");
    assert_eq!(v["params"]["a"], -3.0);
    assert_eq!(v["pass"], true);
    assert!(v["max_error"].as_f64().unwrap() < 1e-5);
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let tight = specres(&["verify", "FINITE_HILBERT", "--n", "1024", "--tolerance", "1e-12"]);
    assert_eq!(tight.status.code(), Some(1));
    let bad = specres(&["verify", "HANKEL_JXI", "--m", "-0.5", "--n", "1024"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = specres(&["verify", "NOT_A_CASE"]);
    assert_eq!(unknown.status.code(), Some(2));
    let partial = specres(&["report"]);
    assert_eq!(partial.status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# coarse run\nn = 1024\na = 0\nb = 5\nformat = csv\n").unwrap();
    let out = dir.path().join("out.json");
    let o = specres(&[
        "verify",
        "FINITE_HILBERT",
        "--config",
        cfg.to_str().unwrap(),
        "--b",
        "2",
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["params"]["b"], 2.0);
    assert_eq!(v["grid"]["n"], 1024);
}

#[test]
fn config_errors_carry_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "n = 1024\nwidth = 3\n").unwrap();
    let o = specres(&["verify", "FINITE_HILBERT", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2"));
}
