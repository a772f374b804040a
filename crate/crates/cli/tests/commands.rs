use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spheroidal-ga"))
        .args(args)
        .env_remove("SPHEROIDAL_GA_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = cli(&["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn bad_tolerance_key_is_a_usage_error() {
    let o = cli(&["verify", "--suite", "jx2", "--tolerance", "nope=1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cli(&["verify", "--suite", "jx2", "--fd-step", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(cli(&["verify"]).status.code(), Some(2));
    assert_eq!(cli(&["harmonic", "--case", "prolate"]).status.code(), Some(2));
    assert_eq!(cli(&["project", "--case", "2", "--nu", "0.5"]).status.code(), Some(2));
}

#[test]
fn passing_suite_exits_zero_with_versioned_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = cli(&["verify", "--suite", "harmonics", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["pass"], true);
}

#[test]
fn failing_suite_names_identity_and_point() {
    let o = cli(&["verify", "--suite", "brackets"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("FAIL [J_a, J_b] = i J_{a x b}"), "{err}");
    assert!(err.contains(" at ["), "{err}");
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = r["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["pass"] == true)
        .map(|e| e["identity_name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"[P_a, P_b] = 0"), "{names:?}");
}

#[test]
fn seed_flag_and_env_agree() {
    let by_flag = cli(&["verify", "--suite", "coordinates", "--samples", "50", "--seed", "9"]);
    let by_env = Command::new(env!("CARGO_BIN_EXE_spheroidal-ga"))
        .args(["verify", "--suite", "coordinates", "--samples", "50"])
        .env("SPHEROIDAL_GA_SEED", "9")
        .output()
        .unwrap();
    let other = cli(&["verify", "--suite", "coordinates", "--samples", "50", "--seed", "10"]);
    assert_eq!(by_flag.stdout, by_env.stdout);
    assert_ne!(by_flag.stdout, other.stdout);
}

#[test]
fn transform_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fwd = dir.path().join("fwd.csv");
    let o = cli(&["transform", "--case", "oblate", "--mu", "1.5", "--grid", "4", "--out", fwd.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // blank the coordinates and recover them from x
    let text = std::fs::read_to_string(&fwd).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("case,mu,eta,theta,phi,x0,x1,x2"));
    let blanked: String = std::iter::once("case,mu,eta,theta,phi,x0,x1,x2".to_string())
        .chain(lines.map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            format!("{},{},,,,{},{},{}", c[0], c[1], c[5], c[6], c[7])
        }))
        .collect::<Vec<_>>()
        .join("\n");
    let pts = dir.path().join("pts.csv");
    std::fs::write(&pts, blanked).unwrap();
    let o = cli(&["transform", "--inverse", "--in", pts.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let back = stdout(&o);
    let rows = |s: &str| -> Vec<Vec<f64>> {
        s.lines()
            .skip(1)
            .map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect())
            .collect()
    };
    let (a, b) = (rows(&text), rows(&back));
    assert_eq!(a.len(), 64);
    assert_eq!(a.len(), b.len());
    for (ra, rb) in a.iter().zip(&b) {
        for k in [1, 2, 4, 5, 6] {
            assert!((ra[k] - rb[k]).abs() < 1e-10, "{ra:?} vs {rb:?}");
        }
        let dphi = (ra[3] - rb[3]).rem_euclid(2.0 * std::f64::consts::PI);
        assert!(dphi.min(2.0 * std::f64::consts::PI - dphi) < 1e-10);
    }
}

#[test]
fn project_emits_disk_section() {
    let o = cli(&["project", "--case", "3", "--nu", "0.5", "--grid", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,phi,t,phi_out"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 256);
    let radius = (-0.5f64).exp();
    for r in &rows {
        // the upper hemisphere lands inside the disk
        assert_eq!(r[0] <= std::f64::consts::FRAC_PI_2 + 1e-12, r[2] <= radius + 1e-12);
    }
}

#[test]
fn harmonic_table_and_residual() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.json");
    let o = cli(&[
        "harmonic", "--case", "prolate", "--kind", "interior", "--n", "3", "--m", "2",
        "--summary", summary.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("eta,theta,phi,x0,x1,x2,U\n"));
    assert_eq!(text.lines().count(), 1 + 216);
    let s = read_json(&summary);
    assert!(s["residual"]["max"].as_f64().unwrap() < 1e-5);
    assert_eq!(s["separation_constant"], -8.0);
    assert_eq!(cli(&["harmonic", "--case", "prolate", "--kind", "interior", "--n", "1", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn qm_reports_correction() {
    let o = cli(&["qm", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["curl_free"], true);
    assert_eq!(v["correction_found"], true);
    assert!(!v["gradient_poly"].as_str().unwrap().is_empty());
    assert_eq!(cli(&["qm", "--k", "3", "--scan-max-degree", "2"]).status.code(), Some(2));
}

#[test]
fn kernel_scan_is_small() {
    let o = cli(&["kernel", "--n", "2", "--y", "0,0,0", "--grid", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x0,x1,x2,abs_g,div_residual,curl_residual"));
    let mut count = 0;
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
        assert!(v[4] < 1e-6 && v[5] < 1e-6, "{l}");
        count += 1;
    }
    assert_eq!(count, 81);
    assert_eq!(cli(&["kernel", "--n", "2", "--y", "0,0"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["verify", "--suite", "monogenic", "--seed", "3"][..],
        &["harmonic", "--case", "oblate", "--kind", "exterior", "--n", "2", "--m", "1", "--grid", "3"][..],
    ] {
        assert_eq!(cli(args).stdout, cli(args).stdout);
    }
}
