//! Random-graph experiments comparing measured `ω_γ(G(n,p))` with the
//! predicted `ω_th`, plus report serialization, diagnostic CSV writers and
//! the self-check suite.

pub mod diagnose;
pub mod reference;
mod verify;

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{gen_gnp, RationalDensity, Seed};
use crate::solver::{omega_gamma, SearchBudget, SolveStatus};
use crate::theory::{predict_omega, ModelParams};

pub use verify::{reference_check, verify_suite, CheckResult, VerifyLevel, VerifySummary};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub gammas: Vec<RationalDensity>,
    pub instances: u64,
    pub master_seed: Seed,
    /// Per-instance solver budget.
    pub budget: SearchBudget,
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// One row of the measured-versus-predicted table. Min, max and average cover solved instances
/// only and are absent when none finished.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub gamma: RationalDensity,
    pub n: usize,
    pub p: f64,
    /// Instances solved to optimality.
    pub instances: u64,
    pub omega_min: Option<usize>,
    pub omega_max: Option<usize>,
    pub omega_avg: Option<f64>,
    pub omega_th: f64,
    pub timeouts: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
}

/// Seed of instance `instance` under the `gamma_index`-th density.
pub fn derive_seed(master: Seed, gamma_index: u64, instance: u64) -> Seed {
    master.derive(gamma_index, instance)
}

fn validate(cfg: &ExperimentConfig) -> Result<()> {
    if cfg.instances == 0 {
        return Err(Error::domain("instances must be at least 1"));
    }
    if cfg.gammas.is_empty() {
        return Err(Error::domain("no densities given"));
    }
    if cfg.gammas.len() > 1 << 16 || cfg.instances > 1 << 48 {
        return Err(Error::domain(
            "too many densities or instances for seed derivation",
        ));
    }
    for &g in &cfg.gammas {
        ModelParams::new(g, cfg.p, cfg.n as u64)?;
    }
    Ok(())
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    validate(cfg)?;
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?
            .install(|| run_rows(cfg)),
        None => run_rows(cfg),
    }
}

fn run_rows(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut rows = Vec::with_capacity(cfg.gammas.len());
    for (gi, &gamma) in cfg.gammas.iter().enumerate() {
        let outcomes: Vec<(usize, SolveStatus)> = (0..cfg.instances)
            .into_par_iter()
            .map(|i| {
                let g = gen_gnp(cfg.n, cfg.p, derive_seed(cfg.master_seed, gi as u64, i))?;
                let out = omega_gamma(&g, gamma, cfg.budget);
                Ok((out.omega, out.status))
            })
            .collect::<Result<_>>()?;
        let solved: Vec<usize> = outcomes
            .iter()
            .filter(|o| o.1 == SolveStatus::Solved)
            .map(|o| o.0)
            .collect();
        let pred = predict_omega(&ModelParams::new(gamma, cfg.p, cfg.n as u64)?)?;
        rows.push(ExperimentRow {
            gamma,
            n: cfg.n,
            p: cfg.p,
            instances: solved.len() as u64,
            omega_min: solved.iter().copied().min(),
            omega_max: solved.iter().copied().max(),
            omega_avg: (!solved.is_empty())
                .then(|| solved.iter().sum::<usize>() as f64 / solved.len() as f64),
            omega_th: pred.omega_th,
            timeouts: (outcomes.len() - solved.len()) as u64,
        });
    }
    Ok(ExperimentReport { rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::domain(format!(
                "unknown format {other:?}, expected csv or json"
            ))),
        }
    }
}

pub const CSV_HEADER: [&str; 9] = [
    "gamma",
    "n",
    "p",
    "instances",
    "omega_min",
    "omega_max",
    "omega_avg",
    "omega_th",
    "timeouts",
];

/// At least two decimals, more only when needed to round-trip.
pub(crate) fn fmt_prob(p: f64) -> String {
    let two = format!("{p:.2}");
    if two.parse::<f64>() == Ok(p) {
        two
    } else {
        format!("{p}")
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn emit_report<W: Write>(
    report: &ExperimentReport,
    format: ReportFormat,
    out: W,
) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::domain("report has no rows"));
    }
    match format {
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in &report.rows {
                w.write_record([
                    r.gamma.to_string(),
                    r.n.to_string(),
                    fmt_prob(r.p),
                    r.instances.to_string(),
                    opt(r.omega_min),
                    opt(r.omega_max),
                    r.omega_avg.map(|a| format!("{a:.2}")).unwrap_or_default(),
                    format!("{:.2}", r.omega_th),
                    r.timeouts.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn write_report_file(
    report: &ExperimentReport,
    format: ReportFormat,
    path: &Path,
) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut buf = std::io::BufWriter::new(file);
    emit_report(report, format, &mut buf).map_err(|e| match e {
        Error::Stream(source) => io_err(source),
        other => other,
    })?;
    buf.flush().map_err(io_err)
}

pub fn parse_json_report(text: &str) -> Result<ExperimentReport> {
    Ok(serde_json::from_str(text)?)
}
