//! Closed-form quantities for γ-quasi-cliques in G(n,p): the relative
//! entropy exponent α(γ,p), binomial point and tail probabilities, first
//! moments of the quasi-clique counts, and the two-point prediction of
//! ω_γ(G(n,p)). All logarithms are natural.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RationalDensity;
use crate::logvalue::LogValue;

/// Default ε in `κ = ω_th + 1/2 + ε`.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Tail terms this far (in nats) below the running maximum are dropped.
pub const TAIL_CUTOFF_NATS: f64 = 60.0;

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

fn check_interior(gamma: RationalDensity) -> Result<()> {
    if gamma.is_interior() {
        Ok(())
    } else {
        Err(Error::InvalidDensity(format!(
            "{gamma} must lie strictly between 0 and 1"
        )))
    }
}

/// Parameters of the binomial random graph model with `0 < p < γ < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub gamma: RationalDensity,
    pub p: f64,
    pub n: u64,
}

impl ModelParams {
    pub fn new(gamma: RationalDensity, p: f64, n: u64) -> Result<Self> {
        check_p(p)?;
        check_interior(gamma)?;
        if gamma.as_f64() <= p {
            return Err(Error::domain(format!(
                "need p < γ, got p = {p}, γ = {gamma}"
            )));
        }
        Ok(Self { gamma, p, n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub alpha: f64,
    pub omega_th: f64,
    /// The two integers closest to `omega_th`; equal when `omega_th` is integral.
    pub candidates: (u64, u64),
    /// Set when `omega_th` is an integer, where "two closest integers" is ambiguous.
    pub integral: bool,
    pub kappa: f64,
    pub epsilon: f64,
}

/// `α(γ,p) = γ ln(γ/p) + (1−γ) ln((1−γ)/(1−p))`.
pub fn alpha(gamma: RationalDensity, p: f64) -> Result<f64> {
    check_p(p)?;
    check_interior(gamma)?;
    Ok(alpha_unchecked(gamma.as_f64(), p))
}

#[inline]
pub(crate) fn alpha_unchecked(g: f64, p: f64) -> f64 {
    g * (g / p).ln() + (1.0 - g) * ((1.0 - g) / (1.0 - p)).ln()
}

/// Binary entropy in nats.
pub fn entropy(gamma: RationalDensity) -> Result<f64> {
    check_interior(gamma)?;
    let g = gamma.as_f64();
    Ok(-g * g.ln() - (1.0 - g) * (1.0 - g).ln())
}

/// `ln C(n, k)`.
pub fn log_binom(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::domain(format!("log_binom: k = {k} > n = {n}")));
    }
    Ok(ln_choose(n, k))
}

/// `ln C(n, k)` for `k <= n`.
///
/// Small `min(k, n−k)` sums the product formula term by term. Otherwise
/// both factorial arguments exceed 64 and Stirling's series, arranged so
/// that no large terms cancel, is accurate to rounding.
pub(crate) fn ln_choose(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if k <= 64 {
        let base = (n - k) as f64;
        return (1..=k).map(|i| ((base + i as f64) / i as f64).ln()).sum();
    }
    let (nf, kf, rf) = (n as f64, k as f64, (n - k) as f64);
    kf * (nf / kf).ln() - rf * (-kf / nf).ln_1p()
        + 0.5 * (nf / (2.0 * std::f64::consts::PI * kf * rf)).ln()
        + stirling_tail(nf)
        - stirling_tail(kf)
        - stirling_tail(rf)
}

/// `ln x! − (x ln x − x + ½ ln 2πx)` for `x > 64`.
fn stirling_tail(x: f64) -> f64 {
    let x2 = x * x;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x
}

/// Explicit part of the Stirling estimate `ln C(n, γn) ≈ n·h(γ) − ½ ln(nγ(1−γ))`.
pub fn stirling_log_binom(n: u64, gamma: RationalDensity) -> Result<f64> {
    let h = entropy(gamma)?;
    if n < 2 {
        return Err(Error::domain(format!(
            "stirling_log_binom needs n >= 2, got {n}"
        )));
    }
    let g = gamma.as_f64();
    let nf = n as f64;
    Ok(nf * h - 0.5 * (nf * g * (1.0 - g)).ln())
}

/// `ln P(Bi(N,p) = r)`.
pub(crate) fn ln_binomial_point(trials: u64, r: u64, p: f64) -> LogValue {
    if r > trials {
        return LogValue::Zero;
    }
    LogValue::Ln(ln_choose(trials, r) + r as f64 * p.ln() + (trials - r) as f64 * (-p).ln_1p())
}

/// `ln P(Bi(N,p) >= r0)`, summed from the largest term in log space.
pub(crate) fn ln_binomial_tail(trials: u64, r0: u64, p: f64) -> LogValue {
    if r0 == 0 {
        return LogValue::ONE;
    }
    if r0 > trials {
        return LogValue::Zero;
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let mode = ((trials + 1) as f64 * p).floor() as u64;
    let mut max = f64::NEG_INFINITY;
    let mut acc = 0.0f64;
    for r in r0..=trials {
        let t = ln_choose(trials, r) + r as f64 * lp + (trials - r) as f64 * lq;
        if t > max {
            acc = acc * (max - t).exp() + 1.0;
            max = t;
        } else {
            acc += (t - max).exp();
        }
        if r >= mode && t < max - TAIL_CUTOFF_NATS {
            break;
        }
    }
    LogValue::Ln(max + acc.ln())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinomialLogProbs {
    /// `ln P(Bi(N,p) = ⌈γN⌉)`
    pub point: LogValue,
    /// `ln P(Bi(N,p) >= γN)`
    pub tail: LogValue,
}

pub fn binom_log_probs(trials: u64, p: f64, gamma: RationalDensity) -> Result<BinomialLogProbs> {
    check_p(p)?;
    check_interior(gamma)?;
    if trials == 0 {
        return Err(Error::domain("binom_log_probs needs N >= 1"));
    }
    if gamma.as_f64() <= p {
        return Err(Error::domain(format!(
            "need p < γ, got p = {p}, γ = {gamma}"
        )));
    }
    let r0 = gamma.ceil_mul(trials);
    Ok(BinomialLogProbs {
        point: ln_binomial_point(trials, r0, p),
        tail: ln_binomial_tail(trials, r0, p),
    })
}

fn check_k(n: u64, k: u64) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::domain(format!(
            "need 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// `ln E X_k = ln C(n,k) + ln P(Bi(S,p) >= ⌈γS⌉)`, `S = C(k,2)`, where
/// `X_k` counts k-vertex γ-quasi-cliques in G(n,p).
pub fn expected_log_xk(n: u64, k: u64, gamma: RationalDensity, p: f64) -> Result<LogValue> {
    check_p(p)?;
    check_k(n, k)?;
    let s = k * (k - 1) / 2;
    let tail = ln_binomial_tail(s, gamma.quasi_threshold(k), p);
    Ok(LogValue::Ln(ln_choose(n, k)) * tail)
}

/// Lower-bound proxy for `ln E Z_k` (γ-flat k-sets):
/// `ln C(n,k) + ln P(Bi(S,p) = ⌈γS⌉)`. The `1 + o(1)` flatness factor is
/// not included.
pub fn expected_log_zk(n: u64, k: u64, gamma: RationalDensity, p: f64) -> Result<LogValue> {
    check_p(p)?;
    check_k(n, k)?;
    let s = k * (k - 1) / 2;
    let point = ln_binomial_point(s, gamma.quasi_threshold(k), p);
    Ok(LogValue::Ln(ln_choose(n, k)) * point)
}

/// `(2/α)(ln n − ln ln n + ln(eα/2)) + 1/2`.
pub fn omega_th_from_alpha(n: u64, alpha: f64) -> f64 {
    let ln_n = (n as f64).ln();
    2.0 / alpha * (ln_n - ln_n.ln() + 1.0 + (alpha / 2.0).ln()) + 0.5
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("need n >= 3, got {n}")));
    }
    Ok(())
}

/// First-moment cutoff `κ = (2/α)(ln n − ln ln n + ln(eα/2)) + 1 + ε`;
/// ω_γ(G(n,p)) < κ with high probability.
pub fn kappa_upper(params: &ModelParams, epsilon: f64) -> Result<f64> {
    check_n(params.n)?;
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::domain(format!(
            "ε must be non-negative, got {epsilon}"
        )));
    }
    let a = alpha(params.gamma, params.p)?;
    Ok(omega_th_from_alpha(params.n, a) + 0.5 + epsilon)
}

pub fn predict_omega(params: &ModelParams) -> Result<Prediction> {
    predict_omega_with_epsilon(params, DEFAULT_EPSILON)
}

pub fn predict_omega_with_epsilon(params: &ModelParams, epsilon: f64) -> Result<Prediction> {
    check_n(params.n)?;
    let a = alpha(params.gamma, params.p)?;
    let omega_th = omega_th_from_alpha(params.n, a);
    let lo = omega_th.floor();
    let integral = lo == omega_th;
    let candidates = if integral {
        (lo as u64, lo as u64)
    } else {
        (lo as u64, omega_th.ceil() as u64)
    };
    Ok(Prediction {
        alpha: a,
        omega_th,
        candidates,
        integral,
        kappa: kappa_upper(params, epsilon)?,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalDensity {
        s.parse().unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_unchecked(0.3, 0.3), 0.0);
        assert!(alpha(q("1/2"), 0.5).unwrap().abs() < 1e-15);
        // mpmath, 30 digits
        assert!(close(
            alpha(q("1/2"), 0.2).unwrap(),
            0.223_143_551_314_209_76,
            1e-12
        ));
        assert!(close(
            alpha(q("9/10"), 0.2).unwrap(),
            1.145_725_502_930_663,
            1e-12
        ));
        assert!(alpha(q("1"), 0.2).is_err());
        assert!(alpha(q("1/2"), 1.0).is_err());
    }

    #[test]
    fn entropy_values() {
        assert!(close(
            entropy(q("1/2")).unwrap(),
            std::f64::consts::LN_2,
            1e-15
        ));
        assert!(close(
            entropy(q("3/10")).unwrap(),
            0.610_864_302_054_893_5,
            1e-12
        ));
        for g in ["1/7", "3/10", "0.45", "0.91"] {
            let g = q(g);
            assert!(close(
                entropy(g).unwrap(),
                entropy(g.complement()).unwrap(),
                1e-15
            ));
        }
        assert!(entropy(RationalDensity::ZERO).is_err());
    }

    #[test]
    fn log_binom_values() {
        assert!(close(log_binom(10, 3).unwrap(), 120f64.ln(), 1e-12));
        assert_eq!(log_binom(17, 0).unwrap(), 0.0);
        // exact integer: C(52,5) = 2598960
        assert!(close(log_binom(52, 5).unwrap(), 2_598_960f64.ln(), 1e-12));
        assert!(close(
            log_binom(52, 5).unwrap(),
            14.770_621_922_970_37,
            1e-9
        ));
        assert!(log_binom(3, 4).is_err());
        // ln of the exact integers
        for (n, k, v) in [
            (200u64, 100u64, 135.753_236_081_278_5),
            (1000, 500, 689.467_261_567_851_2),
            (100_000, 90, 717.970_590_273_511_7),
            (100_000_000, 129, 1_875.002_442_518_240_5),
            (100_000, 50_000, 69_308.735_799_409_39),
        ] {
            let got = log_binom(n, k).unwrap();
            assert!((got - v).abs() <= 4e-15 * v, "C({n},{k}): {got} vs {v}");
        }
    }

    #[test]
    fn ln_choose_branches_agree() {
        for n in [130u64, 500, 10_000, 1 << 40] {
            for k in [65u64, 66, 100, 129] {
                let direct: f64 = (1..=k)
                    .map(|i| (((n - k) as f64 + i as f64) / i as f64).ln())
                    .sum();
                let got = ln_choose(n, k);
                assert!((got - direct).abs() <= 1e-12 * direct, "C({n},{k})");
            }
        }
    }

    #[test]
    fn stirling_values() {
        let s = stirling_log_binom(1000, q("3/10")).unwrap();
        assert!(close(s, 608.190_748_289_534_7, 1e-3));
        let r = log_binom(1000, 300).unwrap() - s;
        assert!((-1.5..=1.5).contains(&r));
        // theoretical residual −½ ln(2π)
        assert!(close(r, -0.919_252_025_16, 1e-6));
        let r2 = log_binom(10_000, 5000).unwrap() - stirling_log_binom(10_000, q("1/2")).unwrap();
        assert!((-1.5..=1.5).contains(&r2));
    }

    #[test]
    fn binomial_examples() {
        let b = binom_log_probs(4, 0.5, q("1/2"));
        // p must be strictly below γ
        assert!(b.is_err());
        let b = binom_log_probs(4, 0.49, q("1/2")).unwrap();
        assert!(close(
            b.point.exp(),
            6.0 * 0.49f64.powi(2) * 0.51f64.powi(2),
            1e-14
        ));
        // The p = γ boundary examples, evaluated on the unchecked path.
        assert!(close(
            ln_binomial_point(4, q("1/2").ceil_mul(4), 0.5).ln(),
            0.375f64.ln(),
            1e-14
        ));
        let b = binom_log_probs(3, 0.5, q("3/5")).unwrap();
        assert!(close(b.tail.ln(), 0.5f64.ln(), 1e-14));
        let b = binom_log_probs(10, 0.3, q("3/5")).unwrap();
        assert!(close(b.point.exp(), 0.036_756_909, 1e-12));
    }

    #[test]
    fn expected_counts() {
        let x = expected_log_xk(5, 3, q("3/5"), 0.5).unwrap();
        assert!(close(x.ln(), 5f64.ln(), 1e-13));
        let z = expected_log_zk(5, 3, q("3/5"), 0.5).unwrap();
        assert!(close(z.ln(), 3.75f64.ln(), 1e-13));
        assert!(z.ln() <= x.ln());
        // threshold 0 (γ = 0) → probability one
        let x0 = expected_log_xk(9, 4, RationalDensity::ZERO, 0.3).unwrap();
        assert!(close(x0.ln(), log_binom(9, 4).unwrap(), 1e-15));
        assert!(expected_log_xk(5, 1, q("1/2"), 0.3).is_err());
        assert!(expected_log_xk(5, 6, q("1/2"), 0.3).is_err());
    }

    #[test]
    fn xk_negative_above_kappa() {
        let params = ModelParams::new(q("1/2"), 0.2, 10_000).unwrap();
        let k = kappa_upper(&params, DEFAULT_EPSILON).unwrap().ceil() as u64 + 2;
        assert!(expected_log_xk(10_000, k, q("1/2"), 0.2).unwrap().ln() < 0.0);
    }

    #[test]
    fn zk_increasing_in_n() {
        let mut last = f64::NEG_INFINITY;
        for n in [20u64, 50, 100, 1000, 10_000] {
            let z = expected_log_zk(n, 8, q("3/5"), 0.3).unwrap().ln();
            assert!(z > last);
            last = z;
        }
    }

    #[test]
    fn kappa_and_prediction() {
        let params = ModelParams::new(q("1/2"), 0.2, 50).unwrap();
        let k = kappa_upper(&params, 0.1).unwrap();
        assert!(close(k, 12.643_583_780_401_73 + 0.6, 1e-9));
        assert!(close(k, 13.245, 5e-3));
        let pred = predict_omega(&params).unwrap();
        assert!(close(pred.omega_th, 12.64, 0.005));
        assert_eq!(pred.candidates, (12, 13));
        assert!(!pred.integral);
        assert!(close(
            pred.kappa - pred.omega_th,
            0.5 + DEFAULT_EPSILON,
            1e-12
        ));
        assert!(kappa_upper(&params, 0.2).unwrap() > k);
        for (g, p, n) in [("1/2", 0.2, 50), ("3/10", 0.05, 100), ("9/10", 0.15, 12345)] {
            let params = ModelParams::new(q(g), p, n).unwrap();
            let gap = kappa_upper(&params, 0.0).unwrap() - predict_omega(&params).unwrap().omega_th;
            assert!(close(gap, 0.5, 1e-12));
        }
        assert!(kappa_upper(&ModelParams::new(q("1/2"), 0.2, 2).unwrap(), 0.1).is_err());

        let p2 = ModelParams::new(q("9/10"), 0.1, 50).unwrap();
        assert!(close(predict_omega(&p2).unwrap().omega_th, 4.39, 0.005));
        let p3 = ModelParams::new(q("3/10"), 0.05, 100).unwrap();
        assert!(close(predict_omega(&p3).unwrap().omega_th, 14.44, 0.005));
    }

    #[test]
    fn model_params_validation() {
        assert!(ModelParams::new(q("1/2"), 0.5, 10).is_err());
        assert!(ModelParams::new(q("1/2"), 0.6, 10).is_err());
        assert!(ModelParams::new(q("1"), 0.6, 10).is_err());
        assert!(ModelParams::new(q("1/2"), 0.0, 10).is_err());
    }
}
