//! End-to-end runs of the `isokit` binary.

use std::path::Path;
use std::process::{Command, Output};

fn isokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isokit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn isokit_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isokit"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn catenoid_through_two_circles() {
    let out = isokit(&[
        "catenoid",
        "--r1",
        "1",
        "--z1",
        "0",
        "--r2",
        "2.718281828459045",
        "--z2",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["c"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["d"].as_f64().unwrap().abs() < 1e-12);

    let out = isokit(&[
        "catenoid", "--r1", "2", "--z1", "0", "--r2", "2", "--z2", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "NoSolution");
}

#[test]
fn exit_codes() {
    assert_eq!(isokit(&[]).status.code(), Some(2));
    assert_eq!(
        isokit(&["minimize", "--endpoints", "1,0,2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        isokit(&["surface", "revolution", "--grid", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(isokit(&["ivp", "--a", "-1"]).status.code(), Some(2));
    // admissible flags, failing solver: the profile leaves the positive half-plane
    let out = isokit(&[
        "surface",
        "revolution",
        "--profile",
        "poly",
        "--coeffs",
        "0,1",
        "--range",
        "-1:1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn helicoidal_classification_reports() {
    let v = json(&isokit(&[
        "classify",
        "helicoidal",
        "--c",
        "1",
        "--ref",
        "yz",
    ]));
    assert_eq!(v["case"], "NoHelicoidal");
    assert_eq!(v["constraints"][0]["name"], "c = 0");
    let v = json(&isokit(&[
        "classify",
        "helicoidal",
        "--c",
        "0",
        "--ref",
        "xy",
    ]));
    assert_eq!(v["case"], "NonIsotropicODE");
    let v = json(&isokit(&[
        "classify",
        "parabolic",
        "--a",
        "0",
        "--b",
        "1",
        "--c1",
        "0.5",
        "--ref",
        "yz",
    ]));
    assert_eq!(v["case"], "NoSolution");
    assert_eq!(v["constraints"][0]["name"], "c1 = 0");
}

#[test]
fn minimize_recovers_log_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit_in(
        dir.path(),
        &[
            "minimize",
            "--ref",
            "lz",
            "--alpha",
            "1",
            "--lambda",
            "0",
            "--endpoints",
            "1,0,2.718281828459045,1",
            "--n",
            "200",
            "--csv",
            "min.csv",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert!(v["gradient_norm"].as_f64().unwrap() < 1e-8);
    let text = std::fs::read_to_string(dir.path().join("min.csv")).unwrap();
    let (header, rows) = isokit::io::parse_csv(&text).unwrap();
    assert_eq!(header, ["t", "z"]);
    assert_eq!(rows.len(), 201);
    for r in rows {
        assert!((r[1] - r[0].ln()).abs() < 1e-4);
    }
}

#[test]
fn catenary_csv_round_trips_through_residual_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit_in(
        dir.path(),
        &[
            "catenary", "--alpha", "1", "--c", "2", "--d", "1", "--range", "1:3", "--n", "400",
            "--out", "cat.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("cat.csv")).unwrap();
    let (_, rows) = isokit::io::parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 401);
    assert!((rows[400][1] - (2.0 * 3f64.ln() + 1.0)).abs() < 1e-14);

    let ok = isokit_in(
        dir.path(),
        &[
            "residual",
            "--check",
            "el",
            "--input",
            "cat.csv",
            "--threshold",
            "1e-4",
        ],
    );
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    assert_eq!(json(&ok)["pass"], true);
    // the same samples are not critical for a different exponent
    let bad = isokit_in(
        dir.path(),
        &[
            "residual",
            "--check",
            "el",
            "--alpha",
            "2",
            "--input",
            "cat.csv",
            "--threshold",
            "1e-4",
        ],
    );
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["pass"], false);
}

#[test]
fn surface_mesh_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "surface",
        "revolution",
        "--profile",
        "log",
        "--coeffs",
        "1,0",
        "--range",
        "1:2.718281828459045",
        "--grid",
        "8x16",
        "--mesh",
    ];
    let a = isokit_in(dir.path(), &[&args[..], &["a.obj"]].concat());
    let b = isokit_in(dir.path(), &[&args[..], &["b.obj"]].concat());
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    let read = |p: &str| std::fs::read(dir.path().join(p)).unwrap();
    assert_eq!(read("a.obj"), read("b.obj"));
    assert_eq!(read("a.csv"), read("b.csv"));
    let obj = String::from_utf8(read("a.obj")).unwrap();
    // the seam at θ = 2π is shared, so 9 rows of 16 vertices
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 9 * 16);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 8 * 16);
    let v = json(&a);
    let area = v["relative_area"].as_f64().unwrap();
    let exact = std::f64::consts::PI * (std::f64::consts::E.powi(2) + 1.0) / 2.0;
    assert!((area - exact).abs() / exact < 1e-6);
    let h = String::from_utf8(read("a.csv")).unwrap();
    let (header, rows) = isokit::io::parse_csv(&h).unwrap();
    assert_eq!(header, ["u", "v", "x", "y", "z", "H"]);
    assert!(rows.iter().all(|r| r[5].abs() < 1e-10));
}

#[test]
fn panel_override_changes_quadrature() {
    let args = [
        "surface",
        "revolution",
        "--profile",
        "power",
        "--coeffs",
        "1,3,0",
        "--range",
        "1:2",
        "--grid",
        "2x4",
    ];
    let coarse = Command::new(env!("CARGO_BIN_EXE_isokit"))
        .env("ISOKIT_PANELS", "4")
        .args(args)
        .output()
        .unwrap();
    let v = json(&coarse);
    assert_eq!(v["panels"], 4);
    let bad = Command::new(env!("CARGO_BIN_EXE_isokit"))
        .env("ISOKIT_PANELS", "one")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn ivp_writes_samples_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = isokit_in(
        dir.path(),
        &["ivp", "--a", "1", "--tol", "1e-12", "--csv", "axis.csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["R"].as_f64().unwrap(), 0.15);
    assert!((v["zpp_origin"].as_f64().unwrap() - 0.25).abs() < 1e-6);
    let text = std::fs::read_to_string(dir.path().join("axis.csv")).unwrap();
    let (header, rows) = isokit::io::parse_csv(&text).unwrap();
    assert_eq!(header, ["t", "z", "zp"]);
    assert_eq!(rows[0], [0.0, 1.0, 0.0]);
}

#[test]
fn sms_residual_check_on_cli_surface() {
    let out = isokit(&[
        "residual",
        "--check",
        "sms",
        "--surface",
        "parabolic",
        "--plane",
        "yz",
        "--a",
        "1",
        "--b",
        "2",
        "--c1",
        "0.5",
        "--c2",
        "-2",
        "--profile",
        "poly",
        "--coeffs",
        "0,0,0.25",
        "--range",
        "1.5:4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let off = isokit(&[
        "residual",
        "--check",
        "sms",
        "--surface",
        "parabolic",
        "--plane",
        "yz",
        "--a",
        "1",
        "--b",
        "2",
        "--c1",
        "1",
        "--c2",
        "-2",
        "--profile",
        "poly",
        "--coeffs",
        "0,0,0.25",
        "--range",
        "1.5:4",
    ]);
    assert_eq!(off.status.code(), Some(1));
}
