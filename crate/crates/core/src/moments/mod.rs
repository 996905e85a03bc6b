//! Overlap machinery for the second moment of the γ-flat count.
//!
//! Two k-sets `A`, `B` sharing `ℓ` vertices share `T = C(ℓ,2)` pairs out of
//! `S = C(k,2)` each; `R = S − T` pairs are private to each side and
//! `m = ⌈γS⌉` is the edge count a γ-flat set must have. [`OverlapPattern`]
//! bundles these and evaluates the hypergeometric law of `e(A∩B)`, its
//! successive ratio, the joint probability `g_ℓ(L)` and the normalized
//! ratio `R_ℓ(L)`, all in log space. [`exact`] repeats the same quantities
//! in exact rationals for small `S`.

pub mod exact;
mod flatness;
mod variance;

use serde::{Deserialize, Serialize};

pub use flatness::{
    flatness_report, sample_flat_fraction, sample_flatness, FlatnessReport, FlatnessSample,
    FlatnessViolation, EXHAUSTIVE_LIMIT,
};
pub use variance::{overlap_weight, variance_bound, VarianceProfile};

use crate::error::{Error, Result};
use crate::graph::RationalDensity;
use crate::logvalue::LogValue;
use crate::theory::{ln_binomial_point, ln_choose};

/// Flatness slack `D_k(ℓ) = min(T, S−T) · ℓ^{−1/2} · ln k`.
pub fn dk_threshold(k: u64, ell: u64) -> Result<f64> {
    if k < 3 || ell < 2 || ell > k - 1 {
        return Err(Error::domain(format!(
            "D_k(ℓ) needs k >= 3 and 2 <= ℓ <= k−1, got k = {k}, ℓ = {ell}"
        )));
    }
    Ok(dk_unchecked(k, ell))
}

pub(crate) fn dk_unchecked(k: u64, ell: u64) -> f64 {
    let s = k * (k - 1) / 2;
    let t = ell * (ell - 1) / 2;
    t.min(s - t) as f64 / (ell as f64).sqrt() * (k as f64).ln()
}

/// Parameters `(k, ℓ, S, T, R, m)` of two k-sets overlapping in ℓ vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapPattern {
    pub k: u64,
    pub ell: u64,
    pub s: u64,
    pub t: u64,
    pub r: u64,
    /// `⌈γS⌉`
    pub m: u64,
    pub gamma: RationalDensity,
    pub p: f64,
}

impl OverlapPattern {
    /// Pattern with `2 <= ℓ <= k − 1`, the range the overlap formulas cover.
    pub fn new(k: u64, ell: u64, gamma: RationalDensity, p: f64) -> Result<Self> {
        if ell < 2 || ell + 1 > k {
            return Err(Error::domain(format!(
                "overlap needs 2 <= ℓ <= k−1, got k = {k}, ℓ = {ell}"
            )));
        }
        Self::with_overlap(k, ell, gamma, p)
    }

    /// Any `0 <= ℓ <= k`, including the degenerate overlaps.
    pub fn with_overlap(k: u64, ell: u64, gamma: RationalDensity, p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        if ell > k {
            return Err(Error::domain(format!("ℓ = {ell} exceeds k = {k}")));
        }
        let s = k * k.saturating_sub(1) / 2;
        let t = ell * ell.saturating_sub(1) / 2;
        Ok(Self {
            k,
            ell,
            s,
            t,
            r: s - t,
            m: gamma.ceil_mul(s),
            gamma,
            p,
        })
    }

    /// Whether `e(A∩B) = L` is compatible with `e(A) = m`.
    #[inline]
    pub fn in_support(&self, l: u64) -> bool {
        l <= self.t && l <= self.m && self.m - l <= self.r
    }

    /// Smallest `L` in the support.
    pub fn support_min(&self) -> u64 {
        self.m.saturating_sub(self.r)
    }

    /// Largest `L` in the support.
    pub fn support_max(&self) -> u64 {
        self.t.min(self.m)
    }

    /// `C(L) = P(e(A∩B) = L)` when the k-set carries exactly `m` uniformly
    /// placed edges: `C(T,L)·C(R,m−L)/C(S,m)`.
    pub fn overlap_c(&self, l: u64) -> LogValue {
        if !self.in_support(l) {
            return LogValue::Zero;
        }
        LogValue::Ln(
            ln_choose(self.t, l) + ln_choose(self.r, self.m - l) - ln_choose(self.s, self.m),
        )
    }

    /// `Q(L) = C(L+1)/C(L) = ((T−L)/(L+1)) · ((m−L)/(R−m+L+1))`.
    pub fn ratio_q(&self, l: u64) -> Result<f64> {
        if l >= self.t || !self.in_support(l) || !self.in_support(l + 1) {
            return Err(Error::domain(format!(
                "Q(L) needs L and L+1 in the support, got L = {l} for {self:?}"
            )));
        }
        let (t, r, m, l) = (self.t as f64, self.r as f64, self.m as f64, l as f64);
        Ok((t - l) / (l + 1.0) * ((m - l) / (r - m + l + 1.0)))
    }

    /// Whether `C(⌈γT⌉ + r) <= exp(−c·r(r−1) / (2·min(R,T)))` with
    /// `c = 1/max(γ, 1−γ)`. A diagnostic: the inequality is only claimed for
    /// large `k`.
    pub fn deviation_bound_check(&self, r: u64) -> Result<bool> {
        let base = self.gamma.ceil_mul(self.t);
        if r == 0 || base + r > self.t {
            return Err(Error::domain(format!(
                "need r >= 1 and ⌈γT⌉ + r <= T, got r = {r}, ⌈γT⌉ = {base}, T = {}",
                self.t
            )));
        }
        let g = self.gamma.as_f64();
        let c = 1.0 / g.max(1.0 - g);
        let rf = r as f64;
        let rhs = -c * rf * (rf - 1.0) / (2.0 * self.r.min(self.t) as f64);
        Ok(self.overlap_c(base + r).ln() <= rhs)
    }

    /// `ln P(Bi(S,p) = m)`, the probability that one k-set has exactly `m` edges.
    pub fn ln_point(&self) -> LogValue {
        ln_binomial_point(self.s, self.m, self.p)
    }

    /// `g_ℓ(L) = P(e(A) = e(B) = m, e(A∩B) = L)
    ///        = C(T,L)·C(R,m−L)²·p^{2m−L}·(1−p)^{2⌊(1−γ)S⌋−T+L}`.
    pub fn g_ell(&self, l: u64) -> LogValue {
        if !self.in_support(l) {
            return LogValue::Zero;
        }
        let edges = 2 * self.m - l;
        let non_edges = 2 * (self.s - self.m) + l - self.t;
        LogValue::Ln(
            ln_choose(self.t, l)
                + 2.0 * ln_choose(self.r, self.m - l)
                + edges as f64 * self.p.ln()
                + non_edges as f64 * (-self.p).ln_1p(),
        )
    }

    /// `ln R_ℓ(L) = ln g_ℓ(L) − 2·ln P(e(A) = m)`.
    pub fn ln_ratio_r(&self, l: u64) -> LogValue {
        match self.g_ell(l) {
            LogValue::Zero => LogValue::Zero,
            g => g / self.ln_point().pow(2),
        }
    }

    /// `R_ℓ(L) = g_ℓ(L) / P(e(A) = m)²`.
    pub fn ratio_r(&self, l: u64) -> Result<f64> {
        if !self.in_support(l) {
            return Err(Error::domain(format!(
                "R_ℓ(L) outside the support: L = {l} for {self:?}"
            )));
        }
        Ok(self.ln_ratio_r(l).exp())
    }

    /// `λ = 2·(γ/(1−γ))·((1−p)/p)`, the step bound for `R_ℓ(L+1)/R_ℓ(L)`
    /// above `⌊γT⌋`.
    pub fn lambda(&self) -> f64 {
        let g = self.gamma.as_f64();
        2.0 * g / (1.0 - g) * (1.0 - self.p) / self.p
    }

    /// `⌊γT + D_k(ℓ)⌋`, the last `L` kept in the variance sum.
    pub fn sum_limit(&self) -> u64 {
        let gt = self.gamma.num() as f64 * self.t as f64 / self.gamma.den() as f64;
        (gt + dk_unchecked(self.k, self.ell)).floor() as u64
    }
}
