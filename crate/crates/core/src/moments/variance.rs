use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::OverlapPattern;
use crate::error::{Error, Result};
use crate::graph::RationalDensity;
use crate::logvalue::{log_sum, LogValue};
use crate::theory::ln_choose;

/// `ln t(ℓ)`, `t(ℓ) = C(k,ℓ)·C(n−k,k−ℓ)/C(n,k)`: the chance that a uniform
/// k-set meets a fixed one in exactly ℓ vertices.
pub fn overlap_weight(n: u64, k: u64, ell: u64) -> Result<LogValue> {
    if k > n || ell > k || k - ell > n - k {
        return Err(Error::domain(format!(
            "t(ℓ) needs ℓ <= k <= n and k−ℓ <= n−k, got n = {n}, k = {k}, ℓ = {ell}"
        )));
    }
    Ok(LogValue::Ln(
        ln_choose(k, ell) + ln_choose(n - k, k - ell) - ln_choose(n, k),
    ))
}

/// Per-ℓ terms `t(ℓ) · Σ_{L=0}^{⌊γT+D_k(ℓ)⌋} R_ℓ(L)` bounding the
/// normalized variance of the γ-flat count, for `ℓ ∈ [2, k−1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceProfile {
    pub n: u64,
    pub k: u64,
    pub per_ell: BTreeMap<u64, f64>,
    pub total: f64,
    /// Natural logs of the same terms; finite even where `per_ell` overflows.
    pub ln_per_ell: BTreeMap<u64, f64>,
    pub ln_total: f64,
}

pub fn variance_bound(n: u64, k: u64, gamma: RationalDensity, p: f64) -> Result<VarianceProfile> {
    if k < 3 || k >= n {
        return Err(Error::domain(format!(
            "need 3 <= k < n, got k = {k}, n = {n}"
        )));
    }
    if !gamma.is_interior() || gamma.as_f64() <= p {
        return Err(Error::domain(format!(
            "need 0 < p < γ < 1, got p = {p}, γ = {gamma}"
        )));
    }
    let mut ln_per_ell = BTreeMap::new();
    for ell in 2..k {
        let pat = OverlapPattern::new(k, ell, gamma, p)?;
        let upto = pat.sum_limit().min(pat.t);
        let sum = log_sum((0..=upto).map(|l| pat.ln_ratio_r(l)));
        let term = overlap_weight(n, k, ell)? * sum;
        ln_per_ell.insert(ell, term.ln());
    }
    let ln_total = log_sum(ln_per_ell.values().map(|&x| LogValue::from_ln(x))).ln();
    Ok(VarianceProfile {
        n,
        k,
        per_ell: ln_per_ell.iter().map(|(&l, &x)| (l, x.exp())).collect(),
        total: ln_total.exp(),
        ln_per_ell,
        ln_total,
    })
}

#[cfg(test)]
mod tests {
    use super::super::exact;
    use super::*;

    fn q(s: &str) -> RationalDensity {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        assert!((overlap_weight(6, 3, 2).unwrap().exp() - 0.45).abs() < 1e-14);
        let w = overlap_weight(40, 7, 7).unwrap().ln();
        assert!((w + ln_choose(40, 7)).abs() < 1e-12);
        for (n, k) in [(10u64, 4u64), (100, 13), (1000, 30)] {
            let lo = k.saturating_sub(n - k);
            let total = log_sum((lo..=k).map(|l| overlap_weight(n, k, l).unwrap()));
            assert!((total.exp() - 1.0).abs() < 1e-10);
        }
        assert!(overlap_weight(6, 4, 1).is_err());
    }

    #[test]
    fn profile_shape() {
        let prof = variance_bound(100, 5, q("3/5"), 0.3).unwrap();
        assert_eq!(
            prof.per_ell.keys().copied().collect::<Vec<_>>(),
            vec![2, 3, 4]
        );
        assert!(prof.per_ell.values().all(|&v| v >= 0.0 && v.is_finite()));
        let sum: f64 = prof.per_ell.values().sum();
        assert!((sum - prof.total).abs() <= 1e-12 * prof.total);
        assert!(variance_bound(5, 5, q("3/5"), 0.3).is_err());
        assert!(variance_bound(100, 5, q("3/5"), 0.7).is_err());
    }

    #[test]
    fn matches_exact_rational_total() {
        for (n, k, g, p) in [
            (100u64, 5u64, "3/5", 0.3),
            (60, 8, "1/2", 0.2),
            (30, 12, "9/10", 0.5),
        ] {
            let fast = variance_bound(n, k, q(g), p).unwrap().total;
            let slow = exact::to_f64(&exact::variance_total(n, k, q(g), p).unwrap());
            assert!(((fast - slow) / slow).abs() <= 1e-6, "{fast} vs {slow}");
        }
    }
}
