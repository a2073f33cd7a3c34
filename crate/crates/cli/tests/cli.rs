//! End-to-end tests of the installed binary: exit codes, report output,
//! file formats and worker-count determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn chebydyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebydyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("chebydyn-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn fixed_points_reports_the_known_values() {
    let out = chebydyn(&["fixed-points", "--k", "2,0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("K=")).collect();
    assert_eq!(lines.len(), 5, "expected 5 reports:\n{text}");
    assert!(text.contains("modulus=4.5"), "{text}");
    assert!(text.contains("z=inf"));
    assert!(text.contains("superattracting"));
}

#[test]
fn fixed_points_prints_discrepancies_at_one() {
    let out = chebydyn(&["fixed-points", "--k", "1,0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("discrepancy"), "{text}");
    assert!(text.contains("root-pair"), "{text}");
}

#[test]
fn degenerate_parameter_exits_one_with_message() {
    let out = chebydyn(&["fixed-points", "--k", "0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("degenerate parameter K=0 (identity map)"),
        "{err}"
    );
}

#[test]
fn usage_errors_exit_two() {
    let out = chebydyn(&["fixed-points", "--k", "2,0", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chebydyn(&["fixed-points", "--k", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chebydyn(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn critical_points_lists_multiplicities() {
    let out = chebydyn(&["critical-points", "--k", "2,0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("z=0 multiplicity=2"), "{text}");
    assert!(text.contains("z=-2 multiplicity=2"), "{text}");
    assert!(text.contains("z=2.5 multiplicity=1"), "{text}");
}

#[test]
fn render_plane_writes_ppm_and_csv() {
    let out_path = tmp_path("plane.ppm");
    let csv_path = tmp_path("plane.csv");
    let out = chebydyn(&[
        "render-plane",
        "--k",
        "0.6,0",
        "--grid",
        "40x30",
        "--out",
        out_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&out_path).unwrap();
    assert!(bytes.starts_with(b"P6\n40 30\n255\n"));
    assert_eq!(bytes.len(), 13 + 40 * 30 * 3);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 40 * 30);
    assert!(csv.lines().next().unwrap().starts_with("0,0,"));
    std::fs::remove_file(out_path).ok();
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn worker_count_never_changes_bytes() {
    let a_path = tmp_path("w1.ppm");
    let b_path = tmp_path("w4.ppm");
    for (path, workers) in [(&a_path, "1"), (&b_path, "4")] {
        let out = chebydyn(&[
            "render-basins",
            "--k",
            "1.5,0",
            "--grid",
            "64x64",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&a_path).unwrap();
    let b = std::fs::read(&b_path).unwrap();
    assert_eq!(a, b);
    std::fs::remove_file(a_path).ok();
    std::fs::remove_file(b_path).ok();
}

#[test]
fn render_param_and_stability_run() {
    let p1 = tmp_path("param.ppm");
    let out = chebydyn(&[
        "render-param",
        "--critical",
        "c2",
        "--grid",
        "32x32",
        "--out",
        p1.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(std::fs::read(&p1).unwrap().starts_with(b"P6\n32 32\n255\n"));
    std::fs::remove_file(p1).ok();

    let p2 = tmp_path("stab.ppm");
    let out = chebydyn(&[
        "render-stability",
        "--which",
        "z2",
        "--region",
        "-6,2,-4,4",
        "--grid",
        "32x32",
        "--out",
        p2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(std::fs::read(&p2).unwrap().starts_with(b"P6\n32 32\n255\n"));
    std::fs::remove_file(p2).ok();
}

#[test]
fn unwritable_output_exits_three() {
    let out = chebydyn(&[
        "render-plane",
        "--k",
        "0.6,0",
        "--grid",
        "4x4",
        "--out",
        "/nonexistent-dir/out.ppm",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_and_writes_csv() {
    let csv_path = tmp_path("verify.csv");
    let out = chebydyn(&["verify", "--csv", csv_path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("pair_conjugacy"), "{text}");
    assert!(text.contains("FAIL (expected)"), "{text}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("name,samples,max_rel_error,pass,notes"));
    assert!(csv.contains("K1_z1"));
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn verify_is_reproducible_for_a_fixed_seed() {
    let a = chebydyn(&["verify", "--seed", "7"]);
    let b = chebydyn(&["verify", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}
