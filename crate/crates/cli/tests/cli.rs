use std::path::Path;
use std::process::{Command, Output};

fn hullmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullmap")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const TRIANGLE: &str = "dim,2\n0,0\n1,0\n0,1\n";
const SQUARE_CENTER: &str = "dim,2\n0,0\n1,0\n1,1\n0,1\n0.5,0.5\n";
const CUBE: &str = "dim,3\n0,0,0\n1,0,0\n0,1,0\n1,1,0\n0,0,1\n1,0,1\n0,1,1\n1,1,1\n";
const COLLINEAR: &str = "dim,2\n0,0\n1,1\n2,2\n";

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.csv", TRIANGLE);
    let col = write(dir.path(), "col.csv", COLLINEAR);
    let missing = dir.path().join("missing.csv").to_string_lossy().into_owned();

    let out = hullmap(&["approx", &missing, "--eps", "0.1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.csv"));

    assert_eq!(hullmap(&["hull", &col]).status.code(), Some(3));
    assert_eq!(hullmap(&["converge", &tri, "--eps-list", "0.1,0"]).status.code(), Some(2));
    assert_eq!(hullmap(&["dual", &tri]).status.code(), Some(2));
    assert_eq!(hullmap(&["approx", &tri, "--eps", "0.1", "--render", "svg"]).status.code(), Some(2));
    assert_eq!(hullmap(&["hull", &tri, "--bogus"]).status.code(), Some(2));

    let cube = write(dir.path(), "cube.csv", CUBE);
    let out = hullmap(&["classify", &cube, "--direction", "1,1e-6,2e-6", "--tol-tie", "2.5e-6"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("competing faces"));
}

#[test]
fn hull_document_for_square_with_center() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.csv", SQUARE_CENTER);
    let out = hullmap(&["hull", &sq]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["interior"].as_array().unwrap().len(), 1);
    assert_eq!(doc["facets"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_reports_faces() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.csv", CUBE);
    let out = hullmap(&["classify", &cube, "--direction", "0,0,1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "facet");
    assert_eq!(doc["vertices"], serde_json::json!([4, 5, 6, 7]));
}

#[test]
fn dual_writes_verdict_and_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.csv", CUBE);
    let out_path = dir.path().join("dual.json");
    let out = hullmap(&["dual", &cube, "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("equivalent: true, flattened_convex: true"));
    for f in ["dual.json", "dual.spherical.obj", "dual.flattened.obj", "dual.transform.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn converge_and_approx_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.csv", TRIANGLE);
    let col = write(dir.path(), "col.csv", COLLINEAR);
    let runs: [&[&str]; 3] = [
        &["converge", &tri, "--samples", "500", "--boundary-per-facet", "20", "--seed", "3"],
        &["converge", &col, "--degenerate", "--samples", "300", "--eps-list", "0.1,0.01"],
        &["approx", &tri, "--eps", "0.01", "--samples", "400", "--strategy", "gaussian_random", "--seed", "8"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let mut files = Vec::new();
        for rep in 0..2 {
            let p = dir.path().join(format!("run{k}_{rep}.csv"));
            let mut a = args.to_vec();
            a.extend(["--out", p.to_str().unwrap()]);
            assert!(hullmap(&a).status.success());
            files.push(std::fs::read(&p).unwrap());
        }
        assert_eq!(files[0], files[1], "{args:?}");
    }
    let p = dir.path().join("timed.csv");
    assert!(hullmap(&["converge", &tri, "--samples", "200", "--timing", "--out", p.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&p).unwrap();
    let wall: f64 = text.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!(wall > 0.0);
}

#[test]
fn approx_renders_next_to_output() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.csv", TRIANGLE);
    let cube = write(dir.path(), "cube.csv", CUBE);
    let out = dir.path().join("img.csv");
    assert!(hullmap(&["approx", &tri, "--eps", "0.01", "--samples", "2000", "--render", "svg", "--out", out.to_str().unwrap()]).status.success());
    assert!(std::fs::read_to_string(dir.path().join("img.svg")).unwrap().starts_with("<svg"));
    let out = dir.path().join("cloud.csv");
    assert!(hullmap(&["approx", &cube, "--eps", "0.01", "--samples", "5000", "--render", "obj", "--out", out.to_str().unwrap()]).status.success());
    let obj = std::fs::read_to_string(dir.path().join("cloud.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 5000);
    assert_eq!(hullmap(&["approx", &tri, "--eps", "0.01", "--render", "obj", "--out", out.to_str().unwrap()]).status.code(), Some(2));
}
