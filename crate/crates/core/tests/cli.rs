// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs of the binary. Set `UPDATE_GOLDEN=1` to rewrite the
//! golden files.

mod support {
    pub mod golden;
}

use std::fs;

use collective_cavities::dynamics::TimeSeries;
use support::golden::{golden_dir, run, sweep_into, CASES};

#[test]
fn golden_outputs() {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in CASES {
        let (code, stdout) = run(args);
        assert_eq!(code, 0, "{name} exited {code}");
        let path = dir.join(format!("{name}.out"));
        if update {
            fs::write(&path, &stdout).unwrap();
        }
        let expected = fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(stdout == expected, "{name} differs from {}", path.display());
    }
}

#[test]
fn count_examples() {
    for (n, n_ex, expected) in [("3", "3", "10\n"), ("2", "2", "5\n"), ("2", "0", "1\n")] {
        let (code, out) = run(&["count", "--cavities", n, "--excitations", n_ex]);
        assert_eq!(code, 0);
        assert_eq!(String::from_utf8(out).unwrap(), expected);
    }
}

#[test]
fn evolve_writes_file() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("run.csv");
    let (code, stdout) = run(&[
        "evolve", "--p", "1", "--q", "3", "--x0", "1", "--tau-end", "10", "--dt", "0.001", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau,x,y,u,w,S,ground"));
    assert_eq!(lines.next(), Some("0,1,0,0,0,0,0"));
    let series = TimeSeries::from_csv(&text).unwrap();
    assert_eq!(series.len(), 10001);
    assert_eq!(series.last().tau, 10.0);
    assert!(series.last().state.x <= 1e-4);
}

#[test]
fn evolve_mixed_start_entropy() {
    let (code, out) = run(&["evolve", "--x0", "0.5", "--y0", "0.5", "--p", "1", "--q", "3", "--tau-end", "1", "--dt", "0.1"]);
    assert_eq!(code, 0);
    let series = TimeSeries::from_csv(&String::from_utf8(out).unwrap()).unwrap();
    assert!((series.first().entropy - std::f64::consts::LN_2).abs() < 1e-6);
}

#[test]
fn invalid_input_exits_one_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("never.csv");
    let out = out.to_str().unwrap();
    for args in [
        vec!["evolve", "--p", "1", "--out", out],
        vec!["evolve", "--p", "1", "--q", "3", "--derive", "--g", "1", "--out", out],
        vec!["evolve", "--p", "1", "--q", "3", "--dt", "0", "--out", out],
        vec!["evolve", "--p", "1", "--q", "3", "--x0", "0.8", "--y0", "0.8", "--out", out],
        vec!["count", "--cavities", "1", "--out", out],
        vec!["count", "--cavities", "x"],
        vec!["spectrum", "--phi", "1.0", "--out", out],
        vec!["compare", "--out", out],
        vec!["nonsense"],
        vec![],
    ] {
        let (code, _) = run(&args);
        assert_eq!(code, 1, "{args:?}");
    }
    assert!(!tmp.path().join("never.csv").exists());
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["evolve", "--help"]).0, 0);
}

#[test]
fn numerical_failure_exits_two() {
    let (code, _) = run(&["evolve", "--p", "1e154", "--q", "0", "--x0", "1", "--tau-end", "1000", "--dt", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn sweep_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, files) = sweep_into(&tmp.path().join("a"));
    assert_eq!(code, 0);
    let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(
        names,
        [
            "g0.5_chi0_gamma0.5.csv",
            "g0.5_chi1_gamma0.5.csv",
            "g1_chi0_gamma0.5.csv",
            "g1_chi1_gamma0.5.csv",
            "manifest.json"
        ]
    );
    let manifest: serde_json::Value = serde_json::from_slice(&files[4].1).unwrap();
    let points = manifest["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    for (entry, (name, bytes)) in points.iter().zip(&files) {
        use sha2::Digest;
        assert_eq!(entry["file"], name.as_str());
        assert_eq!(entry["sha256"], hex::encode(sha2::Sha256::digest(bytes)).as_str());
    }
    let (_, again) = sweep_into(&tmp.path().join("b"));
    assert_eq!(files, again);
}

#[test]
fn sweep_failures() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, r#"{"sweep": {"g": []}}"#).unwrap();
    let out = tmp.path().join("empty");
    let (code, _) = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!out.exists());

    let blocker = tmp.path().join("file");
    fs::write(&blocker, "").unwrap();
    let (code, _) = run(&["sweep", "--g", "1", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(code, 3);

    let out = tmp.path().join("bad-grid");
    let (code, _) = run(&[
        "sweep", "--g", "1", "--gamma", "0.5,1", "--tau-end", "1", "--dt", "0.3", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(!out.exists());

    // A tiny gamma makes q so large that RK4 at this step blows up, while
    // the other point completes; nothing may be left behind.
    let out = tmp.path().join("partial");
    let (code, _) = run(&[
        "sweep", "--g", "1", "--gamma", "0.000001,1", "--x0", "1", "--tau-end", "1", "--dt", "0.01",
        "--jobs", "2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert_eq!(fs::read_dir(&out).unwrap().count(), 0);
}

#[test]
fn config_file_with_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, r#"{"system": {"n_cavities": 3, "n_excitations": 3}, "output": {"format": "json"}}"#).unwrap();
    let (code, out) = run(&["count", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "10\n");
    let (code, out) = run(&["count", "--config", cfg.to_str().unwrap(), "--excitations", "2"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(json["collective"], 5);

    fs::write(&cfg, r#"{"system": {"cavities": 3}}"#).unwrap();
    assert_eq!(run(&["count", "--config", cfg.to_str().unwrap()]).0, 1);
    assert_eq!(run(&["count", "--config", tmp.path().join("missing.json").to_str().unwrap()]).0, 3);
}

#[test]
fn compare_reports() {
    let (code, out) = run(&["compare", "--item", "two-cavity-one-exc", "--format", "json"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let entries = json["items"][0]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["verdict"] == "match"));
    assert_eq!(json["summary"]["mismatches"], 0);
}
