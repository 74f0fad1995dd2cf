use std::fs;
use std::process::{Command, Output};

use qcorr_experiments::sweep::SWEEP_HEADER;

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr")).args(args).output().expect("qcorr runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sweep_header_and_row_count() {
    let out = qcorr(&["sweep", "--scenario", "PHASE_BOTH", "--cin", "1", "--grid", "0,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], SWEEP_HEADER.join(","));
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("PHASE_BOTH,phi,1,0,0,AB,1,1,1,1,1,2,1,1,"), "{}", lines[1]);
    assert!(lines[2].starts_with("PHASE_BOTH,phi,1,1,1,AB,0,0,0,0,0,"), "{}", lines[2]);
}

#[test]
fn single_point_file_has_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    let out = qcorr(&["sweep", "--cin", "0.5", "--grid", "0.5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 2);
}

#[test]
fn config_file_drives_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("amp.cfg");
    let csv = dir.path().join("amp.csv");
    fs::write(
        &cfg,
        format!(
            "# one-sided amplitude damping\nscenario = AMP_ONE\nfamily = psi\nc_in = 0.5\n\
             grid = 0:0.5:1\nbipartitions = AB, AE, BE\noutput = {}\n",
            csv.display()
        ),
    )
    .unwrap();
    let out = qcorr(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 3);
    let labels: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(5).unwrap()).collect();
    assert_eq!(labels, ["AB", "AE", "BE", "AB", "AE", "BE", "AB", "AE", "BE"]);

    let other = dir.path().join("override.csv");
    let out = qcorr(&["sweep", "--config", cfg.to_str().unwrap(), "--grid", "0.25", "--out", other.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&other).unwrap().lines().count(), 1 + 3);
    assert_eq!(fs::read_to_string(&csv).unwrap(), text);
}

#[test]
fn bad_config_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "scenario = PHASE_ONE\ncolour = blue\n").unwrap();
    for args in [
        vec!["sweep", "--config", cfg.to_str().unwrap()],
        vec!["sweep", "--config", "/does/not/exist.cfg"],
        vec!["sweep", "--grid", "1,0"],
        vec!["sweep", "--scenario", "PHASE_ONE", "--grid", "0", "--cin", "2"],
        vec!["dominance", "--scenario", "AMP_BOTH"],
        vec!["werner", "--eta", "0"],
        vec!["geometric", "--scenario", "AMP_ONE"],
        vec!["conserve", "--scenario", "WERNER_AMP"],
        vec!["sweep", "--no-such-flag"],
        vec!["--threads", "0", "sweep"],
    ] {
        let out = qcorr(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let out = qcorr(&["geometric", "--cin", "0.5", "--grid", "0.5", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn audits_pass_on_small_lattices() {
    for args in [
        ["conserve", "--scenario", "PHASE_ONE", "--cin", "0:0.5:1", "--grid", "0:0.5:1"],
        ["conserve", "--scenario", "AMP_ONE", "--cin", "0:0.5:1", "--grid", "0:0.5:1"],
        ["dominance", "--scenario", "AMP_ONE", "--cin", "0:0.5:1", "--grid", "0:0.5:1"],
        ["geometric", "--scenario", "PHASE_ONE", "--cin", "0:0.5:1", "--grid", "0:0.5:1"],
    ] {
        let out = qcorr(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
        if let Some(col) = header.iter().position(|h| *h == "holds") {
            assert!(text.lines().skip(1).all(|l| l.split(',').nth(col) == Some("true")), "{args:?}");
        }
    }
}

#[test]
fn werner_marks_undefined_ratio() {
    let out = qcorr(&["werner", "--eta", "0.3", "--grid", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[5], "undefined");
    assert_eq!(row[7], "1");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["sweep", "--scenario", "AMP_BOTH", "--cin", "0.25,0.9", "--grid", "0:0.1:1"];
    let first = qcorr(&args).stdout;
    assert_eq!(first, qcorr(&args).stdout);
    let mut threaded = vec!["--threads", "3"];
    threaded.extend(args);
    assert_eq!(first, qcorr(&threaded).stdout);
}
