//! CSV writers for the flatness, variance and binomial-exponent diagnostics.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{RationalDensity, Seed};
use crate::moments::{sample_flatness, variance_bound, FlatnessSample};
use crate::theory::{alpha, binom_log_probs, predict_omega, ModelParams};

fn write_rows<W: Write, T: Serialize>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct FlatnessCsv {
    sample: u64,
    seed: u64,
    is_flat: bool,
    violated_ells: String,
}

/// One row per draw; returns the flat fraction.
pub fn flatness_csv<W: Write>(
    k: usize,
    gamma: RationalDensity,
    samples: u64,
    seed: Seed,
    out: W,
) -> Result<f64> {
    let draws = sample_flatness(k, gamma, samples, seed)?;
    let rows: Vec<FlatnessCsv> = draws
        .iter()
        .map(|s: &FlatnessSample| FlatnessCsv {
            sample: s.index,
            seed: s.seed,
            is_flat: s.is_flat,
            violated_ells: s
                .violated_ells
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(";"),
        })
        .collect();
    write_rows(&rows, out)?;
    Ok(draws.iter().filter(|s| s.is_flat).count() as f64 / samples as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceRow {
    pub n: u64,
    /// Larger of the two predicted candidates.
    pub k: u64,
    pub total: f64,
    pub ln_total: f64,
    /// ℓ with the largest term.
    pub peak_ell: u64,
    pub ln_peak: f64,
}

pub fn variance_rows(n_grid: &[u64], gamma: RationalDensity, p: f64) -> Result<Vec<VarianceRow>> {
    n_grid
        .iter()
        .map(|&n| {
            let k = predict_omega(&ModelParams::new(gamma, p, n)?)?.candidates.1;
            if k < 3 || k >= n {
                return Err(Error::domain(format!(
                    "candidate k = {k} unusable at n = {n}"
                )));
            }
            let prof = variance_bound(n, k, gamma, p)?;
            let (&peak_ell, &ln_peak) = prof
                .ln_per_ell
                .iter()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("k >= 3 gives at least one term");
            Ok(VarianceRow {
                n,
                k,
                total: prof.total,
                ln_total: prof.ln_total,
                peak_ell,
                ln_peak,
            })
        })
        .collect()
}

pub fn variance_csv<W: Write>(
    n_grid: &[u64],
    gamma: RationalDensity,
    p: f64,
    out: W,
) -> Result<Vec<VarianceRow>> {
    let rows = variance_rows(n_grid, gamma, p)?;
    write_rows(&rows, out)?;
    Ok(rows)
}

/// `−ln P(Bi(N,p) = ⌈γN⌉)/N` against `α(γ,p)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentRow {
    #[serde(rename = "N")]
    pub trials: u64,
    pub r: u64,
    pub ln_point: f64,
    pub exponent: f64,
    pub alpha: f64,
    pub deviation: f64,
    /// `2·ln N / N`
    pub allowance: f64,
    pub within: bool,
}

pub fn exponent_rows(grid: &[u64], gamma: RationalDensity, p: f64) -> Result<Vec<ExponentRow>> {
    let a = alpha(gamma, p)?;
    grid.iter()
        .map(|&n| {
            if n < 2 {
                return Err(Error::domain(format!("N must be at least 2, got {n}")));
            }
            let ln_point = binom_log_probs(n, p, gamma)?.point.ln();
            let exponent = -ln_point / n as f64;
            let deviation = (exponent - a).abs();
            let allowance = 2.0 * (n as f64).ln() / n as f64;
            Ok(ExponentRow {
                trials: n,
                r: gamma.ceil_mul(n),
                ln_point,
                exponent,
                alpha: a,
                deviation,
                allowance,
                within: deviation <= allowance,
            })
        })
        .collect()
}

pub fn exponent_csv<W: Write>(
    grid: &[u64],
    gamma: RationalDensity,
    p: f64,
    out: W,
) -> Result<Vec<ExponentRow>> {
    let rows = exponent_rows(grid, gamma, p)?;
    write_rows(&rows, out)?;
    Ok(rows)
}
