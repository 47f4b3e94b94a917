use std::path::Path;
use std::process::{Command, Output};

fn phasewall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasewall")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn derive_matches_golden_text() {
    for system in ["liouville", "sinh-gordon", "exp-delta", "free"] {
        let o = phasewall(&["derive", "--system", system]);
        assert!(o.status.success(), "{system}");
        assert_eq!(stdout(&o), golden(&format!("derive_{system}.txt")), "{system}");
    }
}

#[test]
fn derive_json_has_the_limit_terms() {
    let o = phasewall(&["derive", "--system", "liouville", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let terms = &v["limit"]["terms"];
    assert_eq!(terms["D^4 R[0]"], "1/16");
    assert_eq!(terms["D^2 R[0]"], "1/2*p^2 + 1/2*E");
    assert_eq!(terms["R[0]"], "p^4 - 2*p^2*E + E^2");
    assert_eq!(v["zeroth_order"]["is_square"], true);
    assert_eq!(v["zeroth_order"]["difference"], "-2*p^2*E + 2*p*E");
}

#[test]
fn unknown_system_is_a_usage_error() {
    let o = phasewall(&["derive", "--system", "kdv"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("error:") && err.contains("liouville"), "{err}");
}

#[test]
fn csv_is_rejected_for_derive() {
    let o = phasewall(&["derive", "--system", "liouville", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pde_check_passes() {
    let o = phasewall(&["check", "pde", "--format", "text"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS limit_pde ")).count(), 5, "{text}");
    assert!(text.ends_with("0 failure(s)\n"));
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let o = phasewall(&["check", "pde", "--tolerance", "1e-18", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["failures"], 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL limit_pde "));
}

#[test]
fn free_check_runs_the_algebra() {
    let o = phasewall(&["check", "free", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS free ")).count(), 8);
}

#[test]
fn sample_writes_the_full_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.csv");
    let o = phasewall(&["sample", "--case", "delta_well", "--nx", "64", "--np", "64", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,p,value"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    assert_eq!(rows.len(), 64 * 64);
    // at x = 0 the delta-well Wigner function is 1/(p^2 + 1)
    let origin: Vec<_> = rows.iter().filter(|r| r[0] == 0.0).collect();
    assert_eq!(origin.len(), 64);
    for r in origin {
        assert!((r[2] - 1.0 / (r[1] * r[1] + 1.0)).abs() <= 1e-14, "{r:?}");
    }
}

#[test]
fn square_well_vanishes_at_the_walls() {
    let o = phasewall(&["sample", "--case", "square_well", "--x-range", "-1,1", "--nx", "64", "--np", "64"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let wall: Vec<_> = text.lines().skip(1).filter(|l| l.starts_with("-1.0000000000000000e0,")).collect();
    assert_eq!(wall.len(), 64);
    assert!(wall.iter().all(|l| l.ends_with(",0.0000000000000000e0")), "{:?}", &wall[..2]);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"case": "half_sho", "grid": {"nx": 64, "np": 128}}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = phasewall(&["--config", c, "sample"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file).lines().count(), 1 + 64 * 128);
    let flagged = phasewall(&["--config", c, "sample", "--np", "64"]);
    assert_eq!(stdout(&flagged).lines().count(), 1 + 64 * 64);
}

#[test]
fn invalid_grid_and_config_are_usage_errors() {
    let o = phasewall(&["sample", "--case", "wall", "--nx", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let o = phasewall(&["sample", "--case", "wall", "--x-range", "2,1"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"tolerence": 1e-3}"#).unwrap();
    let o = phasewall(&["--config", cfg.to_str().unwrap(), "check", "pde"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn free_particle_reports_purity() {
    let o = phasewall(&["free-particle", "1", "1", "3/5", "4/5", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("purity residual: 0\n"), "{text}");
    assert!(text.contains("stargen residual re: 0\n"));

    let o = phasewall(&["free-particle", "--format", "json", "1", "1", "2", "0", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pure"], false);
    assert_eq!(v["purity"], "3");
    let o = phasewall(&["free-particle", "1", "2", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}
