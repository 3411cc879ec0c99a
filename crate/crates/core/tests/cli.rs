use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use obstacle_identities::harness::{CSV_HEADER, GRID_FILES_CLASSICAL};

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obstacle-verify"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn obstacle-verify")
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn csv_sweep_to_stdout() {
    let dir = tmp();
    let out = run(&["--problem", "twophase", "--N", "2,8", "--format", "csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2,1.66667e0,2.00000e0,3.66667e0,54.5455,"));
    assert!(lines[2].starts_with("8,"));
}

#[test]
fn out_file_and_grid_files() {
    let dir = tmp();
    let table = dir.path().join("table.csv");
    let out = run(
        &[
            "--problem",
            "classical",
            "--eps",
            "0.1",
            "--format",
            "csv",
            "--grid",
            "11",
            "--out",
            table.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&table).unwrap();
    assert!(text.starts_with(CSV_HEADER));
    for name in GRID_FILES_CLASSICAL {
        assert!(dir.path().join(name).is_file(), "missing {name}");
    }
}

#[test]
fn twophase_grid_files_in_cwd() {
    let dir = tmp();
    let out = run(&["--problem", "twophase", "--N", "6", "--grid", "21"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("twophase_N6.csv")).unwrap();
    assert_eq!(text.lines().count(), 22);
}

#[test]
fn configuration_errors_exit_2_and_name_the_flag() {
    let dir = tmp();
    let cases: [(&[&str], &str); 7] = [
        (&["--problem", "classical", "--r", "0.9"], "--r"),
        (&["--problem", "classical", "--R", "1.2"], "--R"),
        (&["--problem", "classical", "--k", "0"], "--k"),
        (&["--problem", "classical", "--eps", "-1"], "--eps"),
        (&["--problem", "twophase", "--N", "1"], "--N"),
        (&["--problem", "twophase", "--quad-order", "99"], "--quad-order"),
        (&["--eps", "0.1"], "--problem"),
    ];
    for (args, flag) in cases {
        let out = run(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn unwritable_output_is_a_config_error() {
    let dir = tmp();
    let bad = dir.path().join("missing").join("t.csv");
    let out = run(
        &["--problem", "twophase", "--N", "2", "--out", bad.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--out"));
}

#[test]
fn corrupted_cell_fails_check() {
    let dir = tmp();
    let out = run(
        &[
            "--check-paper",
            "--problem",
            "twophase",
            "--N",
            "8",
            "--corrupt-cell",
            "8:energy_gap",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("key=8 energy_gap"), "{err}");
}

#[test]
fn check_passes_on_matching_subset() {
    let dir = tmp();
    let out = run(
        &["--check-paper", "--problem", "twophase", "--N", "2,5,6,7,8,9,10,30,120"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
