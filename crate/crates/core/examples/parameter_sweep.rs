// SPDX-License-Identifier: Apache-2.0

//! A 2x2 sweep over g and chi through the command-line front end, into a
//! temporary directory.

use collective_cavities::cli::{run, ExitStatus, MANIFEST_NAME};

pub fn run_example() -> std::io::Result<(ExitStatus, Vec<String>)> {
    let dir = std::env::temp_dir().join(format!("collective-cavities-sweep-{}", std::process::id()));
    let args = [
        "collective-cavities", "sweep", "--g", "0.5,1", "--chi", "0,1", "--gamma", "0.5",
        "--x0", "1", "--tau-end", "2", "--dt", "0.01", "--jobs", "2",
    ];
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let out = dir.to_string_lossy().into_owned();
    let status = run(args.iter().copied().chain(["--out", out.as_str()]), &mut stdout, &mut stderr);
    let mut files: Vec<String> = std::fs::read_dir(&dir)?
        .map(|e| e.map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect::<std::io::Result<_>>()?;
    files.sort();
    std::fs::remove_dir_all(&dir)?;
    Ok((status, files))
}

fn main() -> std::io::Result<()> {
    let (status, files) = run_example()?;
    println!("exit status {}", status.code());
    for f in files {
        let tag = if f == MANIFEST_NAME { "  (manifest)" } else { "" };
        println!("{f}{tag}");
    }
    Ok(())
}
