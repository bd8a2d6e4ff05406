//! Golden-file tests of the `fqw` binary on the built-in graphs.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqw"))
        .args(args)
        .env_remove("FQW_TOL")
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = fqw(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing {}: {e}", path.display()));
    let got = String::from_utf8(out.stdout).unwrap();
    assert!(got == want, "{name}: output differs from {}\n--- got ---\n{got}", path.display());
}

macro_rules! golden_tests {
    ($($name:ident: [$($arg:expr),*];)*) => {
        $(
            #[test]
            fn $name() {
                golden(stringify!($name), &[$($arg),*]);
            }
        )*
    };
}

golden_tests! {
    faces_k33_18: ["faces", "--graph", "k33-18"];
    faces_tetrahedron_csv: ["faces", "--graph", "tetrahedron", "--format", "csv"];
    faces_k33_10_4_4: ["faces", "--graph", "k33-10-4-4"];
    faces_k33_6_6_6: ["faces", "--graph", "k33-6-6-6"];
    faces_truncated_icosahedron: ["faces", "--graph", "truncated-icosahedron"];
    genus_k33_10_4_4: ["genus", "--graph", "k33-10-4-4"];
    genus_truncated_icosahedron_csv: ["genus", "--graph", "truncated-icosahedron", "--format", "csv"];
    blowup_tetrahedron: ["blowup", "--graph", "tetrahedron"];
    blowup_k33_18: ["blowup", "--graph", "k33-18"];
    scatter_k33_6_6_6_detect: ["scatter", "--graph", "k33-6-6-6", "--coin", "d=0.5,omega=1,phi=0", "--detect", "1"];
    scatter_k33_10_4_4: ["scatter", "--graph", "k33-10-4-4", "--coin", "d=0.3,omega=1,phi=0.2"];
    scatter_tetrahedron_csv: ["scatter", "--graph", "tetrahedron", "--format", "csv"];
    detect_k33_10_4_4: ["detect", "--graph", "k33-10-4-4", "--source", "1"];
    detect_k33_18_csv: ["detect", "--graph", "k33-18", "--source", "2'", "--format", "csv"];
    simulate_tetrahedron_doubling: ["simulate", "--graph", "tetrahedron", "--strategy", "doubling"];
    simulate_k33_18_short: ["simulate", "--graph", "k33-18", "--coin", "d=0.9", "--max-steps", "20", "--inflow", "e:1"];
    stationary_tetrahedron_gram: ["stationary", "--graph", "tetrahedron", "--coin", "d=0.5,omega=1,phi=0", "--inflow", "ones", "--method", "gram"];
    stationary_tetrahedron_project_csv: ["stationary", "--graph", "tetrahedron", "--method", "project", "--format", "csv"];
    stationary_k33_18_solve: ["stationary", "--graph", "k33-18", "--coin", "d=0.4,omega=exp(i*pi/3),phi=0.5", "--method", "solve"];
    stationary_k33_6_6_6_evolve: ["stationary", "--graph", "k33-6-6-6", "--method", "evolve", "--inflow", "1,i,-1,0,0.5,2"];
    oracle_tetrahedron: ["oracle", "--graph", "tetrahedron"];
    oracle_tetrahedron_list_csv: ["oracle", "--graph", "tetrahedron", "--coin", "d=0.25", "--list", "--format", "csv"];
}

fn exit_code(args: &[&str]) -> i32 {
    fqw(args).status.code().expect("exit code")
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(exit_code(&["faces", "--graph", "/no/such/file"]), 1);
    assert_eq!(exit_code(&["scatter", "--graph", "tetrahedron", "--coin", "d=2"]), 1);
    assert_eq!(exit_code(&["scatter", "--graph", "tetrahedron", "--coin-matrix", "1,1,1,1"]), 1);
    assert_eq!(exit_code(&["detect", "--graph", "tetrahedron", "--source", "3"]), 1);
    assert_eq!(exit_code(&["detect", "--graph", "tetrahedron", "--source", "x"]), 1);
    assert_eq!(exit_code(&["simulate", "--graph", "tetrahedron", "--inflow", "1,2"]), 1);
    assert_eq!(
        exit_code(&["stationary", "--graph", "tetrahedron", "--coin", "d=0.5,omega=90deg", "--method", "gram"]),
        1
    );
    assert_eq!(exit_code(&["oracle", "--graph", "k33-10-4-4"]), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(exit_code(&[]), 1);
    assert_eq!(exit_code(&["faces"]), 1);
    assert_eq!(exit_code(&["faces", "--graph", "tetrahedron", "--format", "xml"]), 1);
    assert_eq!(exit_code(&["stationary", "--graph", "tetrahedron", "--method", "magic"]), 1);
    assert_eq!(
        exit_code(&["scatter", "--graph", "tetrahedron", "--coin", "d=0.5", "--coin-matrix", "1,0,0,1"]),
        1
    );
}

#[test]
fn graph_file_is_read_from_disk() {
    let dir = std::env::temp_dir().join(format!("fqw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.txt");
    std::fs::write(&path, "vertex 0 : 1 * 2\nvertex 1 : 2 0\nvertex 2 : 0 1\n").unwrap();
    let out = fqw(&["genus", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("genus 0"));
    std::fs::write(&path, "vertex 0 : 1\nvertex 1 : 2\n").unwrap();
    let out = fqw(&["genus", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("fqw-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("faces.txt");
    let out = fqw(&["faces", "--graph", "k33-18", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = fqw(&["faces", "--graph", "k33-18"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = ["stationary", "--graph", "truncated-icosahedron", "--coin", "d=0.5,omega=exp(i*pi/3)"];
    assert_eq!(fqw(&args).stdout, fqw(&args).stdout);
}

#[test]
fn tolerance_comes_from_the_environment() {
    let run = |tol: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fqw"));
        cmd.args(["simulate", "--graph", "tetrahedron"]);
        match tol {
            Some(t) => cmd.env("FQW_TOL", t),
            None => cmd.env_remove("FQW_TOL"),
        };
        cmd.output().unwrap()
    };
    let loose = run(Some("1e-3"));
    let tight = run(None);
    assert_eq!(loose.status.code(), Some(0));
    assert!(loose.stdout.len() < tight.stdout.len());
    assert_eq!(run(Some("abc")).status.code(), Some(1));
    assert_eq!(run(Some("-1")).status.code(), Some(1));
}

#[test]
fn non_unit_omega_detection_warns() {
    let out = fqw(&["detect", "--graph", "k33-18", "--source", "1", "--coin", "d=0.5,omega=60deg"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
    let out = fqw(&["detect", "--graph", "k33-18", "--source", "1"]);
    assert!(out.stderr.is_empty());
}
