// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Subcommands `count`, `spectrum`, `evolve`, `sweep` and `compare` read an
//! optional JSON [`RunConfig`] (`--config`) and merge their own flags on
//! top. Exit codes follow [`ExitStatus`].

mod commands;
mod compare;
mod config;
mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use compare::{
    run_comparison, CompareEntry, CompareItem, CompareReport, CompareSettings, ItemReport, Summary,
    Whitelist, GENERATOR_TOL,
};
pub use config::{
    check_grid, CompareConfig, DeriveConfig, DynamicsConfig, OutputConfig, RunConfig, SweepConfig,
    SystemConfig,
};
pub use sweep::{ManifestEntry, SweepManifest, SweepPoint, MANIFEST_NAME};

use crate::error::Error;
use crate::hamiltonian::TopologyKind;
use crate::symmetry::GroupKind;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InvalidInput = 1,
    Numerical = 2,
    Io = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn for_error(error: &Error) -> Self {
        match error {
            Error::Io { .. } => ExitStatus::Io,
            Error::NotHermitian { .. } => ExitStatus::Numerical,
            e if e.is_numerical() => ExitStatus::Numerical,
            _ => ExitStatus::InvalidInput,
        }
    }
}

/// A failed command: exit status plus the message printed on stderr.
#[derive(Debug)]
pub struct Failure {
    pub status: ExitStatus,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            status: ExitStatus::for_error(&error),
            message: error.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "collective-cavities",
    version,
    about = "Collective atom-photon states in rings of coupled cavities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file (directory for `sweep`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for `sweep`.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of collective states in one excitation manifold.
    Count(CountArgs),
    /// Dressed levels of a collective block, with closed forms where known.
    Spectrum(SpectrumArgs),
    /// Integrate the two-cavity moment equations.
    Evolve(EvolveArgs),
    /// Evolve over a grid of couplings, one file per point plus a manifest.
    Sweep(SweepArgs),
    /// Compare closed forms and tabulated values with the numerical oracles.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub cavities: Option<usize>,
    #[arg(long)]
    pub excitations: Option<u32>,
    #[arg(long)]
    pub group: Option<GroupKind>,
    /// Photons per mode; defaults to the excitation number.
    #[arg(long)]
    pub cutoff: Option<u32>,
}

fn parse_phi(s: &str) -> Result<f64, String> {
    match s {
        "pi" => Ok(std::f64::consts::PI),
        _ => s.parse().map_err(|e| format!("{e}")),
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub cavities: Option<usize>,
    #[arg(long)]
    pub excitations: Option<u32>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub chi: Option<f64>,
    /// 0 or pi.
    #[arg(long, value_parser = parse_phi, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub group: Option<GroupKind>,
    #[arg(long)]
    pub topology: Option<TopologyKind>,
    #[arg(long)]
    pub cutoff: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Derive p and q from --g, --chi and --gamma.
    #[arg(long)]
    pub derive: bool,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub chi: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[command(flatten)]
    pub run: RunArgs,
}

/// Initial state and time grid.
#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub y0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub w0: Option<f64>,
    #[arg(long)]
    pub tau_end: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    pub g: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub chi: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub gamma: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Repeatable; replaces the configured item list.
    #[arg(long, value_enum)]
    pub item: Vec<CompareItem>,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub chi: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
}

/// Parses `args` (program name first), runs the command and reports
/// failures on `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    ExitStatus::Success
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    ExitStatus::InvalidInput
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => ExitStatus::Success,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.status
        }
    }
}

/// Runs an already parsed command line.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut config = match &cli.global.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let g = &cli.global;
    if g.format.is_some() {
        config.output.format = g.format;
    }
    if g.out.is_some() {
        config.output.path = g.out.clone();
    }
    if g.jobs.is_some() {
        config.jobs = g.jobs;
    }
    let verbose = g.verbose;
    match cli.command {
        Command::Count(a) => commands::count(config, &a, verbose, stdout),
        Command::Spectrum(a) => commands::spectrum(config, &a, stdout),
        Command::Evolve(a) => commands::evolve(config, &a, stdout),
        Command::Sweep(a) => sweep::sweep(config, &a, stdout),
        Command::Compare(a) => commands::compare(config, &a, stdout),
    }
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> crate::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::invalid(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

/// Sends command output to the configured file, or to `stdout`.
fn emit(config: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &config.output.path {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e))?,
    }
    Ok(())
}

/// Entry point for the binary.
pub fn main_entry() -> std::process::ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let status = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::ExitCode::from(status.code())
}
