//! End-to-end tests that run the `nil` binary as a subprocess and check
//! stdout bytes, exit codes, and written files.

use std::process::{Command, Output};

use serde_json::Value;

const PI_2: &str = "1.5707963267948966";

fn nil() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nil"));
    // Pin the pool size so tests are immune to machine load; determinism
    // across thread counts is checked explicitly below.
    cmd.env("NIL_KERNEL_THREADS", "2");
    cmd
}

fn run(args: &[&str]) -> Output {
    nil().args(args).output().expect("spawn nil")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn json_line(out: &Output) -> Value {
    serde_json::from_str(stdout_str(out).trim()).expect("stdout is one JSON object")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn distance_fibre_segment_exact_bytes() {
    let out = run(&["distance", "--from", "0,0,0", "--to", "0,0,4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_str(&out),
        "{\"distance\":4,\"phi\":0,\"theta\":1.57079632679}\n"
    );
}

#[test]
fn distance_matches_library() {
    let p = nil_geom::NilPoint::new(0.3, -1.2, 2.5);
    let q = nil_geom::NilPoint::new(-1.1, 0.4, -0.7);
    let out = run(&["distance", "--from", "0.3,-1.2,2.5", "--to", "-1.1,0.4,-0.7"]);
    assert_eq!(code(&out), 0);
    let v = json_line(&out);
    let reported = v["distance"].as_f64().expect("distance field");
    let expected = nil_geom::translation_distance(p, q);
    assert!((reported - expected).abs() < 1e-10, "{reported} vs {expected}");
}

#[test]
fn distance_rejects_coincident_points() {
    let out = run(&["distance", "--from", "1,2,3", "--to", "1,2,3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn triangle_in_a_vertical_plane_sums_to_pi() {
    let out = run(&["triangle", "--vertices", "0,0,0,-1,0.5,2,3,-1.5,1"]);
    assert_eq!(code(&out), 0);
    let v = json_line(&out);
    let sum = v["sum"].as_f64().expect("sum");
    assert!((sum - std::f64::consts::PI).abs() < 1e-9, "sum = {sum}");
    assert_eq!(v["coplanar"], Value::Bool(true));

    // The angle sum is a property of the vertex set, not its ordering.
    let permuted = run(&["triangle", "--vertices", "3,-1.5,1,0,0,0,-1,0.5,2"]);
    let sum2 = json_line(&permuted)["sum"].as_f64().expect("sum");
    assert!((sum - sum2).abs() < 1e-10);
}

#[test]
fn triangle_csv_has_header_and_one_row() {
    let out = run(&[
        "triangle",
        "--vertices",
        "0,0,0,-1,0.5,2,3,-1.5,1",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "omega1,omega2,omega3,sum,coplanarity_residual,antipodality_residual"
    );
    assert_eq!(lines[1].split(',').count(), 6);
}

#[test]
fn triangle_rejects_repeated_vertices() {
    let out = run(&["triangle", "--vertices", "0,0,0,0,0,0,1,1,1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table2_default_rows() {
    let out = run(&["table2"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9, "header plus eight rows");
    assert_eq!(lines[0], "y3,omega1,omega2,omega3,sum");
    assert!(lines[3].starts_with("-1.000000,1.706"), "{}", lines[3]);
    let row: Vec<f64> = lines[5].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(row[0], 0.75);
    assert!((row[4] - 3.19733).abs() < 5e-5, "sum = {}", row[4]);
}

#[test]
fn isoptic_obj_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("thaloid.obj");
    let args = [
        "isoptic",
        "--segment",
        "0,0,4",
        "--alpha",
        PI_2,
        "--res",
        "24",
        "--out",
        path.to_str().unwrap(),
    ];
    let out = run(&args);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_line(&out);
    assert!(v["triangles"].as_u64().expect("triangles") > 0);
    assert!(v["vertices"].as_u64().expect("vertices") > 0);
    let first = std::fs::read(&path).unwrap();
    assert!(!first.is_empty());

    let again = run(&args);
    assert_eq!(out.stdout, again.stdout);
    assert_eq!(first, std::fs::read(&path).unwrap());
}

#[test]
fn isoptic_ply_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("thaloid.ply");
    let out = run(&[
        "isoptic",
        "--segment",
        "0,0,4",
        "--alpha",
        PI_2,
        "--res",
        "16",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("ply\nformat ascii 1.0\n"));
    assert!(text.contains("element vertex "));
    assert!(text.contains("end_header\n"));
}

#[test]
fn isoptic_empty_box_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("none.obj");
    let out = run(&[
        "isoptic",
        "--segment",
        "0,0,4",
        "--alpha",
        "1.5",
        "--box",
        "50,50,50,60,60,60",
        "--res",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    assert!(!path.exists(), "no file on failure");
}

#[test]
fn isoptic_rejects_alpha_outside_range() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.obj");
    let out = run(&[
        "isoptic", "--segment", "0,0,4", "--alpha", "0", "--res", "8", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn isoptic_from_to_normalizes_to_segment_frame() {
    let dir = tempfile::tempdir().unwrap();
    let moved = dir.path().join("moved.obj");
    let out = run(&[
        "isoptic",
        "--from",
        "1,0,0",
        "--to",
        "1,0,4",
        "--alpha",
        PI_2,
        "--res",
        "24",
        "--out",
        moved.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json_line(&out);
    assert_eq!(v["frame_endpoint"][0].as_f64(), Some(0.0));
    assert_eq!(v["frame_endpoint"][1].as_f64(), Some(0.0));
    assert_eq!(v["frame_endpoint"][2].as_f64(), Some(4.0));

    // Same surface as the pre-normalized segment, carried by an isometry:
    // triangle count and residual range agree exactly.
    let base = dir.path().join("base.obj");
    let ref_out = run(&[
        "isoptic", "--segment", "0,0,4", "--alpha", PI_2, "--res", "24", "--out",
        base.to_str().unwrap(),
    ]);
    let r = json_line(&ref_out);
    assert_eq!(v["triangles"], r["triangles"]);
    assert_eq!(v["residual_min"], r["residual_min"]);
    assert_eq!(v["residual_max"], r["residual_max"]);
}

#[test]
fn verify_passes_and_prints_each_suite() {
    let out = run(&["verify", "--samples", "500"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_str(&out);
    assert_eq!(text.matches(": PASS").count(), 4);
    assert!(text.contains("all 4 suites passed"));
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let args = ["verify", "--samples", "2000", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    // The reduction order is fixed by the chunk layout, not the pool size.
    let serial = nil()
        .args(args)
        .env("NIL_KERNEL_THREADS", "1")
        .output()
        .expect("spawn nil");
    assert_eq!(a.stdout, serial.stdout);
}

#[test]
fn verify_catches_an_injected_sign_error() {
    let out = run(&["verify", "--samples", "2000", "--inject-metric-sign-flip"]);
    assert_eq!(code(&out), 4);
    let text = stdout_str(&out);
    assert!(text.contains("angle-sum"));
    assert!(text.contains("FAIL"));
}

#[test]
fn verify_rejects_zero_samples() {
    let out = run(&["verify", "--samples", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn invalid_thread_count_exits_2() {
    let out = nil()
        .args(["table2"])
        .env("NIL_KERNEL_THREADS", "many")
        .output()
        .expect("spawn nil");
    assert_eq!(code(&out), 2);
}
