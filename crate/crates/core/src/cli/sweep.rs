// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::commands::{merge_run_args, render_series, set, EvolveOutput};
use super::config::{check_grid, RunConfig};
use super::{write_atomic, Failure, SweepArgs};
use crate::dynamics::{integrate_moments, DynamicsParams, MomentState};
use crate::error::{Error, Result};
use crate::format::sig12;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub g: f64,
    pub chi: f64,
    pub gamma: f64,
}

impl SweepPoint {
    pub fn file_name(&self, ext: &str) -> String {
        format!("g{}_chi{}_gamma{}.{ext}", sig12(self.g), sig12(self.chi), sig12(self.gamma))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub point: SweepPoint,
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepManifest {
    pub format: super::OutputFormat,
    pub points: Vec<ManifestEntry>,
}

struct Plan {
    dir: PathBuf,
    points: Vec<(SweepPoint, DynamicsParams)>,
    s0: MomentState,
    tau_end: f64,
    dt: f64,
    jobs: usize,
}

fn plan(mut config: RunConfig, args: &SweepArgs) -> Result<(Plan, RunConfig)> {
    merge_run_args(&mut config, &args.run);
    set(&mut config.sweep.g, args.g.clone());
    set(&mut config.sweep.chi, args.chi.clone());
    set(&mut config.sweep.gamma, args.gamma.clone());
    set(&mut config.system.omega, args.omega);
    let dir = config
        .output
        .path
        .clone()
        .ok_or_else(|| Error::invalid("sweep needs an output directory (--out)"))?;
    let (g0, chi0, gamma0, omega) = config.derive_couplings().unwrap_or((
        config.g(),
        config.chi(),
        config.gamma(),
        config.omega(),
    ));
    let axis = |name: &str, grid: &Option<Vec<f64>>, fallback: f64| -> Result<Vec<f64>> {
        let values = grid.clone().unwrap_or_else(|| vec![fallback]);
        check_grid(name, &values)?;
        Ok(values)
    };
    let gs = axis("g", &config.sweep.g, g0)?;
    let chis = axis("chi", &config.sweep.chi, chi0)?;
    let gammas = axis("gamma", &config.sweep.gamma, gamma0)?;
    let mut points = Vec::with_capacity(gs.len() * chis.len() * gammas.len());
    for &g in &gs {
        for &chi in &chis {
            for &gamma in &gammas {
                let params = DynamicsParams::derive(g, chi, gamma, omega)?;
                points.push((SweepPoint { g, chi, gamma }, params));
            }
        }
    }
    let s0 = config.initial_state()?;
    let (tau_end, dt) = config.time_grid()?;
    let jobs = config.jobs()?;
    Ok((Plan { dir, points, s0, tau_end, dt, jobs }, config))
}

fn run_point(plan: &Plan, config: &RunConfig, point: SweepPoint, params: &DynamicsParams) -> Result<ManifestEntry> {
    let series = integrate_moments(plan.s0, params.p, params.q, plan.tau_end, plan.dt)?;
    let text = render_series(
        config.format(),
        &EvolveOutput {
            p: params.p,
            q: params.q,
            derived: Some(*params),
            initial: plan.s0,
            tau_end: plan.tau_end,
            dt: plan.dt,
            rows: &series,
        },
    );
    let file = point.file_name(config.format().extension());
    write_atomic(&plan.dir.join(&file), text.as_bytes())?;
    Ok(ManifestEntry {
        point,
        file,
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    })
}

fn remove_all(dir: &Path, files: impl IntoIterator<Item = String>) {
    for f in files {
        let _ = std::fs::remove_file(dir.join(f));
    }
}

pub(super) fn sweep(config: RunConfig, args: &SweepArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let (plan, config) = plan(config, args)?;
    std::fs::create_dir_all(&plan.dir).map_err(|e| Error::io(&plan.dir, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs)
        .build()
        .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
    let results: Vec<Result<ManifestEntry>> = pool.install(|| {
        plan.points
            .par_iter()
            .map(|(point, params)| run_point(&plan, &config, *point, params))
            .collect()
    });

    let ext = config.format().extension();
    if let Some(pos) = results.iter().position(|r| r.is_err()) {
        remove_all(&plan.dir, plan.points.iter().map(|(p, _)| p.file_name(ext)));
        let err = results.into_iter().nth(pos).and_then(|r| r.err()).expect("failed point");
        return Err(err.into());
    }
    let entries: Vec<ManifestEntry> = results.into_iter().map(|r| r.expect("checked")).collect();
    let manifest = SweepManifest { format: config.format(), points: entries };
    let mut text = serde_json::to_string_pretty(&manifest).expect("serializable manifest");
    text.push('\n');
    if let Err(e) = write_atomic(&plan.dir.join(MANIFEST_NAME), text.as_bytes()) {
        remove_all(&plan.dir, manifest.points.iter().map(|p| p.file.clone()));
        return Err(e.into());
    }
    writeln!(stdout, "{} points written to {}", manifest.points.len(), plan.dir.display())
        .map_err(|e| Error::io("<stdout>", e))?;
    Ok(())
}
