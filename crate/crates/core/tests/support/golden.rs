// SPDX-License-Identifier: Apache-2.0

//! Golden command lines shared by the CLI tests and the acceptance suite.

use std::path::{Path, PathBuf};
use std::process::Command;

pub const BIN: &str = env!("CARGO_BIN_EXE_collective-cavities");

pub const CASES: &[(&str, &[&str])] = &[
    ("count_3_3", &["count", "--cavities", "3", "--excitations", "3", "--verbose"]),
    ("count_2_2_json", &["count", "--cavities", "2", "--excitations", "2", "--format", "json"]),
    (
        "spectrum_2_1",
        &["spectrum", "--cavities", "2", "--excitations", "1", "--g", "1", "--chi", "1", "--phi", "0"],
    ),
    ("spectrum_2_1_chi0", &["spectrum", "--cavities", "2", "--excitations", "1", "--g", "1", "--chi", "0"]),
    ("spectrum_3_2", &["spectrum", "--cavities", "3", "--excitations", "2", "--g", "1", "--chi", "1"]),
    (
        "spectrum_2_2_json",
        &["spectrum", "--cavities", "2", "--excitations", "2", "--g", "1", "--chi", "0", "--format", "json"],
    ),
    (
        "evolve_p1_q3",
        &["evolve", "--p", "1", "--q", "3", "--x0", "1", "--tau-end", "2", "--dt", "0.01"],
    ),
    (
        "evolve_derive_json",
        &[
            "evolve", "--derive", "--g", "1", "--chi", "1", "--gamma", "0.5", "--x0", "0.5", "--y0", "0.5",
            "--tau-end", "0.5", "--dt", "0.05", "--format", "json",
        ],
    ),
    ("compare_all", &["compare", "--all", "--format", "json"]),
    ("compare_chi0_csv", &["compare", "--item", "two-cavity-two-exc", "--chi", "0"]),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the binary, returning exit code and stdout.
pub fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Runs a sweep into `dir` and returns every file in name order.
pub fn sweep_into(dir: &Path) -> (i32, Vec<(String, Vec<u8>)>) {
    let out = dir.to_string_lossy().into_owned();
    let (code, _) = run(&[
        "sweep", "--g", "0.5,1", "--chi", "0,1", "--gamma", "0.5", "--x0", "1", "--tau-end", "1", "--dt",
        "0.01", "--jobs", "3", "--out", &out,
    ]);
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map(|entries| {
            entries
                .map(|e| {
                    let e = e.expect("dir entry");
                    (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).expect("read"))
                })
                .collect()
        })
        .unwrap_or_default();
    files.sort();
    (code, files)
}
