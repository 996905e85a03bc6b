//! One-command self-check: closed-form reproductions, exact identities,
//! sampled inequality sweeps and solver-versus-oracle agreement.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::diagnose::{exponent_rows, variance_rows};
use super::reference::REFERENCE;
use crate::error::Result;
use crate::graph::{gen_gnp, Graph, RationalDensity, Seed};
use crate::logvalue::log_sum;
use crate::moments::{
    exact, flatness_report, overlap_weight, sample_flat_fraction, variance_bound, OverlapPattern,
};
use crate::solver::{brute_force_omega, omega_gamma, SearchBudget};
use crate::theory::{log_binom, predict_omega, stirling_log_binom, ModelParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl std::str::FromStr for VerifyLevel {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Self::Quick),
            "full" => Ok(Self::Full),
            other => Err(crate::Error::domain(format!(
                "unknown level {other:?}, expected quick or full"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckResult>,
    pub failures: usize,
}

fn q(num: u64, den: u64) -> RationalDensity {
    RationalDensity::new(num, den).expect("valid constant density")
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn verify_suite(level: VerifyLevel, seed: Seed) -> VerifySummary {
    let full = level == VerifyLevel::Full;
    let mut checks = vec![
        timed("binomial exponent", exponent_check),
        timed("stirling residual", stirling_check),
        reference_check(|g, p, n| Ok(predict_omega(&ModelParams::new(g, p, n)?)?.omega_th)),
        timed("hypergeometric normalization", || {
            normalization_check(if full { 30 } else { 20 })
        }),
        timed("ratio monotonicity", || {
            monotonicity_check(if full { 80 } else { 40 })
        }),
        timed("overlap ratio dominance", || {
            dominance_check(seed.derive(1, 0), if full { 1000 } else { 200 })
        }),
        timed("flatness sampling", || {
            flatness_check(seed.derive(2, 0), if full { 200 } else { 50 })
        }),
    ];
    if full {
        checks.push(timed("variance trend", variance_check));
    }
    checks.push(timed("oracle equivalence", || {
        oracle_check(seed.derive(3, 0), if full { 200 } else { 60 })
    }));
    let failures = checks.iter().filter(|c| !c.passed).count();
    VerifySummary { checks, failures }
}

fn exponent_check() -> Result<(bool, String)> {
    let rows = exponent_rows(&[100, 1000, 10_000], q(3, 5), 0.3)?;
    let within = rows.iter().all(|r| r.within);
    let shrinking = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    let devs: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.3e}", r.deviation))
        .collect();
    Ok((
        within && shrinking,
        format!("deviations {}", devs.join(", ")),
    ))
}

fn stirling_check() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for n in [100u64, 1000, 100_000] {
        for g in [q(3, 10), q(1, 2), q(7, 10)] {
            let k = (g.as_f64() * n as f64).round() as u64;
            worst = worst.max((log_binom(n, k)? - stirling_log_binom(n, g)?).abs());
        }
    }
    Ok((worst <= 1.5, format!("max residual {worst:.4}")))
}

/// Compares a predictor `(γ, p, n) -> ω_th` against the 27 reference
/// values at ±0.005.
pub fn reference_check(predict: impl Fn(RationalDensity, f64, u64) -> Result<f64>) -> CheckResult {
    timed("predicted omega_th", || {
        let mut worst: f64 = 0.0;
        for row in &REFERENCE {
            let th = predict(q(row.gamma.0, row.gamma.1), row.p, row.n)?;
            let d = (th - row.omega_th).abs();
            if d.is_nan() {
                return Ok((false, "predictor returned NaN".into()));
            }
            worst = worst.max(d);
        }
        Ok((
            worst <= 0.005,
            format!("max deviation {worst:.4} over {} rows", REFERENCE.len()),
        ))
    })
}

const GAMMAS: [(u64, u64); 6] = [(3, 10), (2, 5), (1, 2), (3, 5), (3, 4), (9, 10)];

fn normalization_check(max_k: u64) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut exact_ok = true;
    let mut patterns = 0;
    for k in 3..=max_k {
        for &(a, b) in &GAMMAS {
            for ell in 2..k {
                let pat = OverlapPattern::new(k, ell, q(a, b), 0.2)?;
                let total = log_sum((0..=pat.t).map(|l| pat.overlap_c(l))).exp();
                worst = worst.max((total - 1.0).abs());
                if pat.s <= exact::EXACT_S_LIMIT && ell % 3 == 0 {
                    let mut sum = num_rational::BigRational::zero();
                    for l in 0..=pat.t {
                        sum += exact::overlap_c(&pat, l)?;
                    }
                    exact_ok &= sum.is_one();
                }
                patterns += 1;
            }
        }
    }
    for (n, k) in [(10u64, 4u64), (50, 20), (1000, 30), (100_000, 90)] {
        let lo = k.saturating_sub(n - k);
        let total = log_sum((lo..=k).map(|l| overlap_weight(n, k, l).unwrap())).exp();
        worst = worst.max((total - 1.0).abs());
        if n <= 50 {
            let mut sum = num_rational::BigRational::zero();
            for l in lo..=k {
                sum += exact::overlap_weight(n, k, l)?;
            }
            exact_ok &= sum.is_one();
        }
    }
    Ok((
        worst <= 1e-10 && exact_ok,
        format!(
            "{patterns} patterns, max |sum − 1| {worst:.2e}, exact sums {}",
            if exact_ok { "ok" } else { "off" }
        ),
    ))
}

fn monotonicity_check(max_k: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut patterns = 0;
    for ell in 2..=10u64 {
        for k in ell + 1..=max_k {
            for &(a, b) in &GAMMAS {
                let pat = OverlapPattern::new(k, ell, q(a, b), 0.2)?;
                let (lo, hi) = (pat.support_min(), pat.support_max());
                let mut prev = f64::INFINITY;
                for l in lo..hi {
                    let r = pat.ratio_q(l)?;
                    if r >= prev {
                        bad.push((k, ell, l));
                    }
                    prev = r;
                }
                patterns += 1;
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{patterns} patterns, {} increases {:?}",
            bad.len(),
            bad.first()
        ),
    ))
}

fn dominance_check(seed: Seed, samples: u64) -> Result<(bool, String)> {
    let mut rng = seed.rng();
    let mut bad = Vec::new();
    for _ in 0..samples {
        let k = rng.gen_range(5..=60u64);
        let ell = rng.gen_range(2..k);
        let (a, b) = GAMMAS[rng.gen_range(0..GAMMAS.len())];
        let gamma = q(a, b);
        let p = rng.gen_range(0.02..gamma.as_f64() - 0.01);
        let pat = OverlapPattern::new(k, ell, gamma, p)?;
        let floor = gamma.floor_mul(pat.t);
        if !pat.in_support(floor) {
            continue;
        }
        let top = pat.ln_ratio_r(floor).ln();
        for l in pat.support_min()..floor {
            if pat.ln_ratio_r(l).ln() > top + 1e-12 {
                bad.push((k, ell, gamma.to_string(), p, l));
                break;
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!(
            "{samples} sampled patterns, {} violations {:?}",
            bad.len(),
            bad.first()
        ),
    ))
}

/// All `⌈C(k,2)/2⌉` edges placed among the first `k − 1` vertices.
pub(crate) fn isolated_vertex_graph(k: usize) -> Graph {
    let m = q(1, 2).quasi_threshold(k as u64) as usize;
    let edges: Vec<(usize, usize)> = (0..k - 1)
        .flat_map(|i| (i + 1..k - 1).map(move |j| (i, j)))
        .take(m)
        .collect();
    Graph::new(k, &edges).expect("edges in range")
}

fn flatness_check(seed: Seed, samples: u64) -> Result<(bool, String)> {
    let half = q(1, 2);
    let small = sample_flat_fraction(30, half, 50, seed.derive(0, 0))?;
    let large = sample_flat_fraction(150, half, samples, seed.derive(0, 1))?;
    let rep = flatness_report(&isolated_vertex_graph(100), half)?;
    let construction = !rep.is_flat && rep.violations.iter().any(|v| v.ell == 99);
    Ok((
        small == 1.0 && large >= 0.8 && construction,
        format!("k=30: {small}, k=150 ({samples} draws): {large}, construction non-flat at 99: {construction}"),
    ))
}

fn variance_check() -> Result<(bool, String)> {
    let rows = variance_rows(&[10_000, 1_000_000, 100_000_000], q(1, 2), 0.2)?;
    let decreasing = rows.windows(2).all(|w| w[1].total < w[0].total);
    let fast = variance_bound(60, 8, q(1, 2), 0.2)?.total;
    let slow = exact::to_f64(&exact::variance_total(60, 8, q(1, 2), 0.2)?);
    let matches = ((fast - slow) / slow).abs() <= 1e-6;
    let totals: Vec<String> = rows
        .iter()
        .map(|r| format!("n={} k={}: {:.3e}", r.n, r.k, r.total))
        .collect();
    Ok((
        decreasing && matches,
        format!("{}; exact match {matches}", totals.join(", ")),
    ))
}

fn oracle_check(seed: Seed, instances: u64) -> Result<(bool, String)> {
    let gammas = [q(1, 2), q(3, 5), q(3, 4), q(9, 10)];
    let mut rng = seed.rng();
    let mut mismatches = 0;
    for i in 0..instances {
        let n = rng.gen_range(6..=14);
        let p = if rng.gen_bool(0.5) { 0.2 } else { 0.5 };
        let gamma = gammas[i as usize % gammas.len()];
        let g = gen_gnp(n, p, seed.derive(1, i))?;
        let fast = omega_gamma(&g, gamma, SearchBudget::UNLIMITED).omega;
        if fast != brute_force_omega(&g, gamma)?.omega {
            mismatches += 1;
        }
    }
    Ok((
        mismatches == 0,
        format!("{instances} instances, {mismatches} mismatches"),
    ))
}
