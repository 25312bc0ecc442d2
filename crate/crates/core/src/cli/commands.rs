// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

use serde::Serialize;

use super::compare::{run_comparison, CompareItem, CompareSettings, Whitelist};
use super::config::{DeriveConfig, RunConfig};
use super::{emit, CompareArgs, CountArgs, EvolveArgs, ExitStatus, Failure, OutputFormat, RunArgs, SpectrumArgs};
use crate::dynamics::{integrate_moments, DynamicsParams, MomentState, TimeSeries};
use crate::error::{Error, Result};
use crate::format::sig12;
use crate::hilbert::{enumerate_basis, Phase, SystemParams};
use crate::spectra::{
    analytic_ring_one_exc, analytic_two_cavity_one_exc, collective_block, diagonalize,
    two_cavity_two_exc_eigenvalues, THREE_CAVITY_REFERENCE,
};
use crate::symmetry::{orbits, SymmetryGroup};
use crate::hamiltonian::TopologyKind;

pub(super) fn set<T>(slot: &mut Option<T>, flag: Option<T>) {
    if flag.is_some() {
        *slot = flag;
    }
}

pub(super) fn merge_run_args(config: &mut RunConfig, run: &RunArgs) {
    let d = &mut config.dynamics;
    set(&mut d.x0, run.x0);
    set(&mut d.y0, run.y0);
    set(&mut d.u0, run.u0);
    set(&mut d.w0, run.w0);
    set(&mut d.tau_end, run.tau_end);
    set(&mut d.dt, run.dt);
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(sig12).unwrap_or_default()
}

#[derive(Serialize)]
struct OrbitRow {
    representative: String,
    size: usize,
}

#[derive(Serialize)]
struct CountOutput {
    n_cavities: usize,
    n_excitations: u32,
    group: crate::symmetry::GroupKind,
    fock_cutoff: u32,
    distinguishable: usize,
    collective: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbits: Option<Vec<OrbitRow>>,
}

pub(super) fn count(
    mut config: RunConfig,
    args: &CountArgs,
    verbose: bool,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let s = &mut config.system;
    set(&mut s.n_cavities, args.cavities);
    set(&mut s.n_excitations, args.excitations);
    set(&mut s.group, args.group);
    set(&mut s.fock_cutoff, args.cutoff);
    let n = s.n_cavities.unwrap_or(2);
    let n_ex = s.n_excitations.unwrap_or(1);
    let cutoff = s.fock_cutoff.unwrap_or(n_ex);
    let kind = s.group.unwrap_or_default();

    let params = SystemParams::new(n, cutoff, 1.0, 0.0)?;
    let group = SymmetryGroup::new(kind, n)?;
    let basis = enumerate_basis(&params, n_ex)?;
    let found = orbits(&basis, &group)?;
    let rows = verbose.then(|| {
        found
            .iter()
            .map(|o| OrbitRow {
                representative: o.representative.to_string(),
                size: o.len(),
            })
            .collect::<Vec<_>>()
    });

    let text = match config.format() {
        OutputFormat::Csv => {
            let mut text = format!("{}\n", found.len());
            if let Some(rows) = &rows {
                text.push_str("representative,size\n");
                for r in rows {
                    text.push_str(&format!("{},{}\n", csv_field(&r.representative), r.size));
                }
            }
            text
        }
        OutputFormat::Json => to_json(&CountOutput {
            n_cavities: n,
            n_excitations: n_ex,
            group: kind,
            fock_cutoff: cutoff,
            distinguishable: basis.len(),
            collective: found.len(),
            orbits: rows,
        }),
    };
    emit(&config, &text, stdout)
}

#[derive(Serialize)]
struct SpectrumRow {
    level: usize,
    analytic: Option<f64>,
    oracle: f64,
    deviation: Option<f64>,
    paper_ref: Option<f64>,
    coefficients: Vec<f64>,
}

#[derive(Serialize)]
struct SpectrumOutput {
    n_cavities: usize,
    n_excitations: u32,
    g: f64,
    chi: f64,
    phi: Phase,
    group: crate::symmetry::GroupKind,
    topology: TopologyKind,
    basis: Vec<String>,
    rows: Vec<SpectrumRow>,
}

/// Closed-form eigenvalues available for this block, ascending.
fn closed_form(n: usize, n_ex: u32, g: f64, chi: f64, phi: Phase, topology: TopologyKind) -> Option<Vec<f64>> {
    if topology != TopologyKind::Ring && n > 3 {
        return None;
    }
    let mut values: Vec<f64> = match (n, n_ex, phi) {
        (2, 1, _) => analytic_two_cavity_one_exc(g, chi, phi).ok()?.iter().map(|l| l.lambda).collect(),
        (_, 1, Phase::Symmetric) => analytic_ring_one_exc(g, chi).ok()?.iter().map(|l| l.lambda).collect(),
        (2, 2, Phase::Symmetric) => two_cavity_two_exc_eigenvalues(g, chi, phi).ok()?.to_vec(),
        _ => return None,
    };
    values.sort_by(f64::total_cmp);
    Some(values)
}

pub(super) fn spectrum(mut config: RunConfig, args: &SpectrumArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let s = &mut config.system;
    set(&mut s.n_cavities, args.cavities);
    set(&mut s.n_excitations, args.excitations);
    set(&mut s.g, args.g);
    set(&mut s.chi, args.chi);
    set(&mut s.phi, args.phi);
    set(&mut s.group, args.group);
    set(&mut s.topology, args.topology);
    set(&mut s.fock_cutoff, args.cutoff);
    let n = s.n_cavities.unwrap_or(2);
    let n_ex = s.n_excitations.unwrap_or(1);
    let group = s.group.unwrap_or_default();
    let topology = s.topology.unwrap_or_default();
    let phi = Phase::from_angle(s.phi.unwrap_or(0.0))?;
    let mut params = SystemParams::new(n, s.fock_cutoff.unwrap_or(n_ex), config.g(), config.chi())?.with_phase(phi);
    params.omega = config.omega();
    params.gamma = config.gamma();
    params.validate()?;

    let block = collective_block(&params, n_ex, group, topology)?;
    if block.dim() == 0 {
        return Err(Error::invalid("no collective states for this excitation number and phase").into());
    }
    let spec = diagonalize(&block)?;
    let (g, chi) = (params.g, params.chi);
    let analytic = closed_form(n, n_ex, g, chi, phi, topology).filter(|v| v.len() == spec.len());
    let paper_ref = (n == 3 && n_ex == 2 && phi == Phase::Symmetric && g > 0.0 && g == chi && spec.len() == 5)
        .then(|| THREE_CAVITY_REFERENCE.iter().map(|v| v * g).collect::<Vec<_>>());

    let rows: Vec<SpectrumRow> = spec
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(k, &oracle)| {
            let a = analytic.as_ref().map(|v| v[k]);
            SpectrumRow {
                level: k,
                analytic: a,
                oracle,
                deviation: a.map(|a| (a - oracle).abs()),
                paper_ref: paper_ref.as_ref().map(|v| v[k]),
                // Collective blocks are real symmetric.
                coefficients: spec.eigenvector(k).iter().map(|c| c.re).collect(),
            }
        })
        .collect();

    let text = match config.format() {
        OutputFormat::Csv => {
            let mut text = String::from("level,analytic,oracle,deviation,paper_ref,coefficients\n");
            for r in &rows {
                let coeffs: Vec<String> = r.coefficients.iter().map(|&c| sig12(c)).collect();
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.level,
                    opt(r.analytic),
                    sig12(r.oracle),
                    opt(r.deviation),
                    opt(r.paper_ref),
                    coeffs.join(";")
                ));
            }
            text
        }
        OutputFormat::Json => to_json(&SpectrumOutput {
            n_cavities: n,
            n_excitations: n_ex,
            g,
            chi,
            phi,
            group,
            topology,
            basis: block.labels().names(),
            rows,
        }),
    };
    emit(&config, &text, stdout)
}

#[derive(Serialize)]
pub(super) struct EvolveOutput<'a> {
    pub p: f64,
    pub q: f64,
    pub derived: Option<DynamicsParams>,
    pub initial: MomentState,
    pub tau_end: f64,
    pub dt: f64,
    pub rows: &'a TimeSeries,
}

pub(super) fn render_series(format: OutputFormat, out: &EvolveOutput<'_>) -> String {
    match format {
        OutputFormat::Csv => out.rows.to_csv(),
        OutputFormat::Json => to_json(out),
    }
}

fn check_ratios(p: f64, q: f64) -> Result<()> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::invalid(format!("p must be finite and >= 0, got {p}")));
    }
    if !q.is_finite() {
        return Err(Error::invalid(format!("q must be finite, got {q}")));
    }
    Ok(())
}

pub(super) fn evolve(mut config: RunConfig, args: &EvolveArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    merge_run_args(&mut config, &args.run);
    let d = &mut config.dynamics;
    set(&mut d.p, args.p);
    set(&mut d.q, args.q);
    let physical = args.g.is_some() || args.chi.is_some() || args.gamma.is_some() || args.omega.is_some();
    if args.derive || (physical && d.derive.is_some()) {
        let derive = d.derive.get_or_insert_with(DeriveConfig::default);
        set(&mut derive.g, args.g);
        set(&mut derive.chi, args.chi);
        set(&mut derive.gamma, args.gamma);
        set(&mut derive.omega, args.omega);
    } else if physical {
        return Err(Error::invalid("--g, --chi, --gamma and --omega need --derive").into());
    }

    let (p_in, q_in) = (d.p, d.q);
    let explicit = p_in.is_some() || q_in.is_some();
    let (p, q, derived) = match (explicit, config.derive_couplings()) {
        (true, Some(_)) => {
            return Err(Error::invalid("give either p and q or derive, not both").into());
        }
        (false, None) => {
            return Err(Error::invalid("give --p and --q, or --derive with --g, --chi and --gamma").into());
        }
        (true, None) => {
            let (Some(p), Some(q)) = (p_in, q_in) else {
                return Err(Error::invalid("explicit dynamics needs both p and q").into());
            };
            check_ratios(p, q)?;
            (p, q, None)
        }
        (false, Some((g, chi, gamma, omega))) => {
            let params = DynamicsParams::derive(g, chi, gamma, omega)?;
            (params.p, params.q, Some(params))
        }
    };
    let s0 = config.initial_state()?;
    let (tau_end, dt) = config.time_grid()?;

    let series = integrate_moments(s0, p, q, tau_end, dt)?;
    let text = render_series(
        config.format(),
        &EvolveOutput { p, q, derived, initial: s0, tau_end, dt, rows: &series },
    );
    emit(&config, &text, stdout)
}

pub(super) fn compare(mut config: RunConfig, args: &CompareArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let s = &mut config.system;
    set(&mut s.g, args.g);
    set(&mut s.chi, args.chi);
    set(&mut s.gamma, args.gamma);
    set(&mut s.omega, args.omega);
    let items: Vec<CompareItem> = if args.all {
        CompareItem::ALL.to_vec()
    } else if !args.item.is_empty() {
        args.item.clone()
    } else {
        config.compare.items.clone().unwrap_or_default()
    };
    let settings = CompareSettings {
        g: config.g(),
        chi: config.chi(),
        gamma: config.gamma(),
        omega: config.omega(),
    };
    let report = run_comparison(&items, &settings, &Whitelist::shipped())?;
    let text = match config.format() {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => to_json(&report),
    };
    emit(&config, &text, stdout)?;
    if report.summary.mismatches > 0 {
        return Err(Failure {
            status: ExitStatus::Numerical,
            message: format!("{} undocumented mismatch(es)", report.summary.mismatches),
        });
    }
    Ok(())
}
