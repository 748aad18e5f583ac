use std::path::{Path, PathBuf};
use std::process::Command;

use pqbezier::pq::tri;
use pqbezier::{intermediate_points, AlgorithmOptions, CurveDocument, PqBezierCurve, Rational, Scalar};
use pqbezier_cli::{run, triangle_rows};
use serde_json::Value;

fn write_curve(dir: &Path, name: &str, json: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

const QUADRATIC: &str = r#"{"version":1,"degree":2,"dimension":1,"p":"2","q":"1","points":[[0],[1],[0]]}"#;
const CUBIC_2D: &str =
    r#"{"version":1,"degree":3,"dimension":2,"p":"3/2","q":"1/2","points":[[0,0],[1,2],[3,2],[4,0]]}"#;
const LINE_2D: &str = r#"{"version":1,"degree":1,"dimension":2,"p":1.5,"q":0.5,"points":[[0,0],[2,1]]}"#;

fn pqbez(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["pqbez"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn polyline_points(svg: &str, class: &str) -> Vec<Vec<[f64; 2]>> {
    let marker = format!(r#"class="{class}""#);
    svg.lines()
        .filter(|l| l.contains(&marker) && l.contains("<polyline"))
        .map(|l| {
            let start = l.find(" points=\"").unwrap() + 9;
            let end = start + l[start..].find('"').unwrap();
            l[start..end]
                .split(' ')
                .map(|xy| {
                    let (x, y) = xy.split_once(',').unwrap();
                    [x.parse().unwrap(), y.parse().unwrap()]
                })
                .collect()
        })
        .collect()
}

#[test]
fn eval_exact_and_float() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "q.json", QUADRATIC);
    let path = path.to_str().unwrap();
    let (code, out, _) = pqbez(&["eval", "--curve", path, "--t", "1/2", "--algorithm", "dc1", "--exact"]);
    assert_eq!((code, out.as_str()), (0, "3/8\n"));
    let (code, out, _) = pqbez(&["eval", "--curve", path, "--t", "1/2", "--algorithm", "perm", "--sigma", "2,1"]);
    assert_eq!((code, out.as_str()), (0, "0.375\n"));
    let (code, out, _) = pqbez(&["eval", "--curve", path, "--t", "0", "--t", "1", "--exact"]);
    assert_eq!((code, out.as_str()), (0, "0\n0\n"));
}

#[test]
fn eval_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "q.json", QUADRATIC);
    let path = path.to_str().unwrap();
    for args in [
        vec!["eval", "--curve", path, "--t", "abc"],
        vec!["eval", "--curve", path, "--t", "1/2", "--algorithm", "perm", "--sigma", "1,1"],
        vec!["eval", "--curve", path, "--t", "1/2", "--algorithm", "nope"],
        vec!["frobnicate"],
    ] {
        let (code, out, err) = pqbez(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    let bad = write_curve(dir.path(), "bad.json", r#"{"version":1,"degree":2}"#);
    assert_eq!(pqbez(&["eval", "--curve", bad.to_str().unwrap(), "--t", "0"]).0, 2);
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(pqbez(&["eval", "--curve", missing.to_str().unwrap(), "--t", "0"]).0, 3);
    let path = write_curve(dir.path(), "q.json", QUADRATIC);
    let unwritable = dir.path().join("no/such/dir/out.txt");
    let (code, _, err) = pqbez(&[
        "eval",
        "--curve",
        path.to_str().unwrap(),
        "--t",
        "0",
        "--out",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("out.txt"));
}

#[test]
fn plot_linear_two_samples() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "line.json", LINE_2D);
    let (code, svg, _) = pqbez(&["plot", "--curve", path.to_str().unwrap(), "--samples", "2"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg"));
    assert_eq!(polyline_points(&svg, "curve"), vec![vec![[0.0, 0.0], [2.0, 1.0]]]);
    assert!(polyline_points(&svg, "polygon").is_empty());
}

#[test]
fn plot_polygon_and_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "cubic.json", CUBIC_2D);
    let (code, svg, _) = pqbez(&[
        "plot",
        "--curve",
        path.to_str().unwrap(),
        "--show-polygon",
        "--show-triangle",
        "1/2",
        "--exact",
    ]);
    assert_eq!(code, 0);
    let polygon = polyline_points(&svg, "polygon");
    assert_eq!(polygon, vec![vec![[0.0, 0.0], [1.0, 2.0], [3.0, 2.0], [4.0, 0.0]]]);
    assert!(svg.contains(r#"stroke-dasharray="6 4""#));

    let curve: PqBezierCurve<Rational> = CurveDocument::from_json(CUBIC_2D).unwrap().to_curve().unwrap();
    let t = Rational::from_ratio(1, 2);
    let rows = triangle_rows(&curve, &t).unwrap();
    let raw = intermediate_points(&curve, &t, "dc1", &AlgorithmOptions::default()).unwrap();
    assert_eq!(rows.len(), raw.levels.len());
    // row k is the dc1 row divided by p^{tri(n) - tri(n-k)}
    for (k, (row, raw_row)) in rows.iter().zip(&raw.levels).enumerate() {
        let scale = curve.params().p.pown(tri(3) - tri(3 - k));
        assert!(row.iter().zip(raw_row).all(|(a, b)| a.scale(&scale) == *b), "level {k}");
    }
    // the apex is the curve point
    assert_eq!(rows[3][0], curve.evaluate(&t).unwrap());
    let levels = polyline_points(&svg, "level");
    assert_eq!(levels.len(), 3);
    for (drawn, row) in levels.iter().zip(&rows[1..]) {
        let want: Vec<[f64; 2]> = row.iter().map(|p| [p.0[0].to_f64(), p.0[1].to_f64()]).collect();
        assert_eq!(drawn.len(), want.len());
        for (a, b) in drawn.iter().zip(&want) {
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn plot_rejects_one_dimensional_curves() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "q.json", QUADRATIC);
    assert_eq!(pqbez(&["plot", "--curve", path.to_str().unwrap()]).0, 2);
}

#[test]
fn elevate_preserves_curve() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "cubic.json", CUBIC_2D);
    let (code, out, _) = pqbez(&["elevate", "--curve", path.to_str().unwrap(), "--exact"]);
    assert_eq!(code, 0);
    let doc = CurveDocument::from_json(&out).unwrap();
    assert_eq!((doc.degree, doc.points.len()), (4, 5));
    let up: PqBezierCurve<Rational> = doc.to_curve().unwrap();
    let src: PqBezierCurve<Rational> = CurveDocument::from_json(CUBIC_2D).unwrap().to_curve().unwrap();
    for t in [Rational::from_ratio(1, 3), Rational::from_ratio(7, 8)] {
        assert_eq!(up.evaluate(&t).unwrap(), src.evaluate(&t).unwrap());
    }
}

#[test]
fn subdivide_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "cubic.json", CUBIC_2D);
    let (code, out, _) = pqbez(&["subdivide", "--curve", path.to_str().unwrap(), "--r", "1/2", "--exact"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let left: PqBezierCurve<Rational> = CurveDocument::from_value(v["left"].clone()).unwrap().to_curve().unwrap();
    let src: PqBezierCurve<Rational> = CurveDocument::from_json(CUBIC_2D).unwrap().to_curve().unwrap();
    let half = Rational::from_ratio(1, 2);
    assert_eq!(left.evaluate(&Rational::from_i64(1)).unwrap(), src.evaluate(&half).unwrap());
    let samples = v["right_samples"].as_array().unwrap();
    assert!(samples.len() >= 2);
    assert_eq!(pqbez(&["subdivide", "--curve", path.to_str().unwrap(), "--r", "x"]).0, 2);
}

#[test]
fn audit_exit_codes_and_json() {
    let (code, out, _) = pqbez(&["audit", "--n-max", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("pass_as_printed"));

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("audit.json");
    let (code, out, _) = pqbez(&["audit", "--n-max", "3", "--json", "--out", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v, file);
    let phi = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["identity_id"] == "phi_closed_form" && e["degree_range"][0] == 3)
        .unwrap();
    assert_eq!(phi["verdict"], "pass_with_correction");

    let (code, out, err) = pqbez(&["audit", "--p", "abc", "--q", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && !err.is_empty());
    assert_eq!(pqbez(&["audit", "--p", "1.5", "--q", "1/2"]).0, 2);
    assert_eq!(pqbez(&["audit", "--p", "2"]).0, 2);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pqbez");
    let dir = tempfile::tempdir().unwrap();
    let path = write_curve(dir.path(), "q.json", QUADRATIC);
    let ok = Command::new(bin)
        .args(["eval", "--curve", path.to_str().unwrap(), "--t", "1/2", "--exact"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "3/8\n");
    let bad = Command::new(bin).args(["eval", "--curve", path.to_str().unwrap(), "--t", "abc"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    let missing = Command::new(bin).args(["eval", "--curve", "/nonexistent/x.json", "--t", "0"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(3));
}
