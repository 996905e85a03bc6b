use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qclique::experiments::{
    diagnose, run_experiment, verify_suite, ExperimentConfig, ReportFormat, VerifyLevel,
};
use qclique::graph::edgelist::{read_edge_list_file, write_edge_list_file};
use qclique::graph::{gen_gnm, gen_gnp};
use qclique::solver::{omega_gamma, SearchBudget, SolveStatus};
use qclique::theory::{predict_omega_with_epsilon, ModelParams, DEFAULT_EPSILON};
use qclique::{RationalDensity, Seed};

/// Per-instance time limit applied to experiments with `n >= 100`.
const DEFAULT_LARGE_N_SECONDS: u64 = 60;

#[derive(Parser)]
#[command(name = "qclique", version, about = "Quasi-cliques in random graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Predicted quasi-clique number of G(n,p)
    Predict {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        gamma: RationalDensity,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        eps: f64,
    },
    /// Write a random graph as an edge list
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "m")]
        p: Option<f64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact γ-quasi-clique number of an edge-list graph
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        gamma: RationalDensity,
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Measure ω_γ over random instances and compare with the prediction
    Experiment(ExperimentArgs),
    /// Numerical diagnostics, emitted as CSV
    Diagnose {
        #[command(subcommand)]
        what: Diagnose,
    },
    /// Run the self-check suite
    Verify {
        #[arg(long, default_value = "quick")]
        level: VerifyLevel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Gnm,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    gammas: Vec<RationalDensity>,
    #[arg(long, default_value_t = 100)]
    instances: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-instance time limit
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Lift the default limits for n >= 100
    #[arg(long, conflicts_with = "max_seconds")]
    no_budget: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Diagnose {
    /// Flatness of G(k, ⌈γ·C(k,2)⌉) draws
    Flatness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gamma: RationalDensity,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalized variance bound across an n grid
    Variance {
        #[arg(long = "n-grid", value_delimiter = ',', value_parser = parse_count, required = true)]
        n_grid: Vec<u64>,
        #[arg(long)]
        gamma: RationalDensity,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Binomial point-probability exponent across an N grid
    #[command(name = "lemma1")]
    Exponent {
        #[arg(long = "N-grid", value_delimiter = ',', value_parser = parse_count, required = true)]
        n_grid: Vec<u64>,
        #[arg(long)]
        gamma: RationalDensity,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Accepts plain integers and integral scientific notation such as `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(format!("not a non-negative integer: {s:?}")),
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).with_context(|| format!("invalid time limit {s}"))
}

/// Writes to `path`, or standard output when absent.
fn with_output<T>(
    path: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> qclique::Result<T>,
) -> Result<T> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            let mut w = BufWriter::new(file);
            let v = f(&mut w).with_context(|| format!("writing {}", p.display()))?;
            w.flush()
                .with_context(|| format!("writing {}", p.display()))?;
            Ok(v)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            let v = f(&mut w)?;
            w.flush()?;
            Ok(v)
        }
    }
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let budget = if a.no_budget {
        SearchBudget::UNLIMITED
    } else if a.n >= 100 {
        if a.p > 0.10 {
            bail!(
                "n >= 100 with p > 0.10 runs unbounded searches; pass --no-budget to run it anyway"
            );
        }
        SearchBudget::time(seconds(
            a.max_seconds.unwrap_or(DEFAULT_LARGE_N_SECONDS as f64),
        )?)
    } else {
        match a.max_seconds {
            Some(s) => SearchBudget::time(seconds(s)?),
            None => SearchBudget::UNLIMITED,
        }
    };
    let cfg = ExperimentConfig {
        n: a.n,
        p: a.p,
        gammas: a.gammas,
        instances: a.instances,
        master_seed: Seed(a.seed),
        budget,
        threads: a.threads,
    };
    let report = run_experiment(&cfg)?;
    for r in report.rows.iter().filter(|r| r.timeouts > 0) {
        eprintln!(
            "warning: γ = {}: {} of {} instances hit the time limit and are excluded from min/max/avg",
            r.gamma, r.timeouts, cfg.instances
        );
    }
    with_output(a.out.as_deref(), |w| {
        qclique::experiments::emit_report(&report, a.format, w)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Predict { n, p, gamma, eps } => {
            let pred = predict_omega_with_epsilon(&ModelParams::new(gamma, p, n)?, eps)?;
            println!("{}", serde_json::to_string(&pred)?);
        }
        Cmd::Gen {
            model,
            n,
            p,
            m,
            seed,
            out,
        } => {
            let g = match (model, p, m) {
                (Model::Gnp, Some(p), None) => gen_gnp(n, p, Seed(seed))?,
                (Model::Gnm, None, Some(m)) => gen_gnm(n, m, Seed(seed))?,
                (Model::Gnp, _, _) => bail!("--model gnp needs --p"),
                (Model::Gnm, _, _) => bail!("--model gnm needs --m"),
            };
            write_edge_list_file(&g, &out)?;
        }
        Cmd::Solve {
            input,
            gamma,
            max_seconds,
        } => {
            let g = read_edge_list_file(&input)?;
            let budget = match max_seconds {
                Some(s) => SearchBudget::time(seconds(s)?),
                None => SearchBudget::UNLIMITED,
            };
            let out = omega_gamma(&g, gamma, budget);
            println!("{}", serde_json::to_string(&out)?);
            if out.status == SolveStatus::Timeout {
                eprintln!("warning: time limit reached; omega is a lower bound");
            }
        }
        Cmd::Experiment(a) => experiment(a)?,
        Cmd::Diagnose { what } => match what {
            Diagnose::Flatness {
                k,
                gamma,
                samples,
                seed,
                out,
            } => {
                let frac = with_output(out.as_deref(), |w| {
                    diagnose::flatness_csv(k, gamma, samples, Seed(seed), w)
                })?;
                eprintln!("flat fraction: {frac}");
            }
            Diagnose::Variance {
                n_grid,
                gamma,
                p,
                out,
            } => {
                with_output(out.as_deref(), |w| {
                    diagnose::variance_csv(&n_grid, gamma, p, w)
                })?;
            }
            Diagnose::Exponent {
                n_grid,
                gamma,
                p,
                out,
            } => {
                with_output(out.as_deref(), |w| {
                    diagnose::exponent_csv(&n_grid, gamma, p, w)
                })?;
            }
        },
        Cmd::Verify { level, seed } => {
            let summary = verify_suite(level, Seed(seed));
            for c in &summary.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                println!("{tag} {:<30} {:>8.2}s  {}", c.name, c.seconds, c.detail);
            }
            println!(
                "{} checks, {} failed",
                summary.checks.len(),
                summary.failures
            );
            if summary.failures > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
