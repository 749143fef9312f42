use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn su11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn point_vacuum_gain_is_shot_noise() {
    let o = su11(&["point", "--g", "0", "--alpha", "1", "--eta", "0.5", "--theta", "1.5707963"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!(close(v["delta_theta"].as_f64().unwrap(), 0.707_106_8, 1e-6));
    assert!(close(v["snl"].as_f64().unwrap(), 0.707_106_8, 1e-6));
}

#[test]
fn point_with_gain_matches_closed_forms() {
    let o = su11(&["point", "--g", "1", "--alpha2", "100", "--eta", "0.5", "--theta", "pi/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let dt = v["delta_theta"].as_f64().unwrap();
    assert!(close(dt, 9.5699e-3, 1e-4), "{dt}");
    let e4 = 4f64.exp();
    let qcrb = 1.0 / (200.0 * (e4 + 1.0) + 2f64.sinh().powi(2)).sqrt();
    assert!(close(v["qcrb"].as_f64().unwrap(), qcrb, 1e-12));
    assert!(v["deviation"].as_f64().unwrap() < 1e-6);
    assert!(v["qcrb"].as_f64().unwrap() <= dt);
}

#[test]
fn point_full_loss_is_thermal() {
    let o = su11(&["point", "--L", "1", "--n-th", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!(close(v["x_var"].as_f64().unwrap(), 3.0, 1e-12));
    assert_eq!(v["delta_theta"], "inf");
}

#[test]
fn csv_point_has_header_and_one_row() {
    let o = su11(&["point", "--format", "csv", "--theta", "-pi/4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("alpha,g,eta,theta,"));
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["point", "--eta", "1.5"][..],
        &["point", "--alpha", "1", "--alpha2", "1"],
        &["point", "--L", "0.1", "--L1", "0.2"],
        &["point", "--theta", "pie"],
        &["point", "--n-th", "-1"],
        &["point", "--bogus"],
        &["fig-eta-opt", "--grid", "3:0:10"],
        &["sweep", "--param", "eta", "--grid", "0:2:5"],
        &["point", "--config", "/nonexistent/su11.conf"],
    ] {
        let o = su11(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn eta_opt_rows() {
    let o = su11(&["fig-eta-opt", "--grid", "0:2:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("g,eta_opt_analytic,eta_opt_numeric_argmin,deviation"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][..3], &[0.0, 1.0, 1.0]);
    let expected = (1.0 + 1.0 / 8f64.cosh()) / 2.0;
    assert_eq!(rows[2][0], 2.0);
    assert!((rows[2][1] - expected).abs() < 1e-12);
    assert!((rows[2][1] - 0.500_335).abs() < 1e-6);
    assert!(rows.iter().all(|r| r[3] < 1e-6));
}

#[test]
fn qcrb_ratio_bounds() {
    let o = su11(&["fig-qcrb-ratio", "--grid", "0:2:3", "--alpha2-grid", "1:100:2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let at = |g: f64, a2: f64| {
        rows.iter()
            .find(|r| r["g"].as_f64() == Some(g) && r["alpha2"].as_f64() == Some(a2))
            .map(|r| r["ratio"].as_f64().unwrap())
            .unwrap()
    };
    assert!(close(at(0.0, 1.0), std::f64::consts::FRAC_1_SQRT_2, 1e-9));
    assert!(at(2.0, 100.0) > 0.99);
    for r in rows {
        assert!(r["ratio"].as_f64().unwrap() <= 1.0);
        assert!(r["deviation"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn lmax_limits_and_photon_number_insensitivity() {
    for (n_th, limit) in [("0", 0.5), ("1", 0.25)] {
        let o = su11(&["fig-lmax", "--grid", "0.5:3:6", "--n-th", n_th, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let rows = json(&o);
        let last = rows.as_array().unwrap().last().unwrap().clone();
        assert_eq!(last["lmax_limit"].as_f64().unwrap(), limit);
        let lo = last["lmax_alpha2_10"].as_f64().unwrap();
        let hi = last["lmax_alpha2_1000"].as_f64().unwrap();
        assert!(lo < hi && hi < limit);
        assert!((hi - lo) / limit < 0.02, "{lo} {hi}");
        assert!(limit - hi < 0.01 * limit, "{hi}");
    }
}

#[test]
fn csv_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = su11(&["sweep", "--param", "theta", "--g", "0.7", "--L", "0.1", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "# operating point\ng = 1\nalpha2 = 100\ntheta = pi/2\neta = 0.3\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&su11(&["point", "--config", p]));
    assert_eq!(from_file["eta"].as_f64(), Some(0.3));
    assert_eq!(from_file["alpha"].as_f64(), Some(10.0));
    let o = su11(&["point", "--config", p, "--eta", "0.5", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["eta"].as_f64(), Some(0.5));
    assert_eq!(v["alpha"].as_f64(), Some(2.0));
    assert_eq!(v["g"].as_f64(), Some(1.0));
}

#[test]
fn validate_quick_passes() {
    let o = su11(&["validate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["level"], "quick");
    assert!(v["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn validate_full_includes_fock_qfi() {
    let o = su11(&["validate", "--level", "full"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("QFI")), "{names:?}");
}

#[test]
fn validate_rejects_real_beam_splitter() {
    let o = su11(&["validate", "--inject-fault", "real-beam-splitter"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    let mean = &v["checks"][0];
    assert!(mean["name"].as_str().unwrap().contains("homodyne mean"));
    assert_eq!(mean["passed"], false);
    assert!(!mean["offending"].as_array().unwrap().is_empty());
    assert!(stderr(&o).contains("homodyne mean"));
}
