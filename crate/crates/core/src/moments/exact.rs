//! Exact-rational evaluation of the overlap quantities, for patterns with
//! `S <= EXACT_S_LIMIT`. The edge probability is taken as the exact binary
//! value of the `f64`, so these agree with the log-space path up to
//! rounding only.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::OverlapPattern;
use crate::error::{Error, Result};
use crate::graph::RationalDensity;

pub const EXACT_S_LIMIT: u64 = 200;

pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn big(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rational_p(p: f64) -> Result<BigRational> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    BigRational::from_float(p).ok_or(Error::InvalidProbability(p))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn check(pat: &OverlapPattern) -> Result<()> {
    if pat.s > EXACT_S_LIMIT {
        return Err(Error::domain(format!(
            "exact mode supports S <= {EXACT_S_LIMIT}, got S = {}",
            pat.s
        )));
    }
    Ok(())
}

fn pow(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

pub fn overlap_c(pat: &OverlapPattern, l: u64) -> Result<BigRational> {
    check(pat)?;
    if !pat.in_support(l) {
        return Ok(BigRational::zero());
    }
    Ok(big(binom(pat.t, l) * binom(pat.r, pat.m - l)) / big(binom(pat.s, pat.m)))
}

pub fn ratio_q(pat: &OverlapPattern, l: u64) -> Result<BigRational> {
    check(pat)?;
    if l >= pat.t || !pat.in_support(l) || !pat.in_support(l + 1) {
        return Err(Error::domain(format!("Q(L) undefined at L = {l}")));
    }
    Ok(int(pat.t - l) / int(l + 1) * (int(pat.m - l) / int(pat.r - pat.m + l + 1)))
}

/// `P(Bi(S,p) = m)`.
pub fn point(pat: &OverlapPattern) -> Result<BigRational> {
    check(pat)?;
    let p = rational_p(pat.p)?;
    let q = BigRational::one() - &p;
    Ok(big(binom(pat.s, pat.m)) * pow(&p, pat.m) * pow(&q, pat.s - pat.m))
}

pub fn g_ell(pat: &OverlapPattern, l: u64) -> Result<BigRational> {
    check(pat)?;
    if !pat.in_support(l) {
        return Ok(BigRational::zero());
    }
    let p = rational_p(pat.p)?;
    let q = BigRational::one() - &p;
    let c = binom(pat.r, pat.m - l);
    Ok(big(binom(pat.t, l) * &c * &c)
        * pow(&p, 2 * pat.m - l)
        * pow(&q, 2 * (pat.s - pat.m) + l - pat.t))
}

pub fn ratio_r(pat: &OverlapPattern, l: u64) -> Result<BigRational> {
    let pt = point(pat)?;
    Ok(g_ell(pat, l)? / (&pt * &pt))
}

/// `t(ℓ) = C(k,ℓ)·C(n−k,k−ℓ)/C(n,k)`.
pub fn overlap_weight(n: u64, k: u64, ell: u64) -> Result<BigRational> {
    if k > n || ell > k || k - ell > n - k {
        return Err(Error::domain(format!(
            "t(ℓ) needs ℓ <= k <= n and k−ℓ <= n−k, got n = {n}, k = {k}, ℓ = {ell}"
        )));
    }
    Ok(big(binom(k, ell) * binom(n - k, k - ell)) / big(binom(n, k)))
}

/// Exact total of the per-ℓ variance bound, with the same `⌊γT + D_k(ℓ)⌋`
/// limits as the log-space path.
pub fn variance_total(n: u64, k: u64, gamma: RationalDensity, p: f64) -> Result<BigRational> {
    if k < 3 || k >= n {
        return Err(Error::domain(format!(
            "need 3 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let mut total = BigRational::zero();
    for ell in 2..k {
        let pat = OverlapPattern::new(k, ell, gamma, p)?;
        let mut sum = BigRational::zero();
        for l in 0..=pat.sum_limit().min(pat.t) {
            sum += ratio_r(&pat, l)?;
        }
        total += overlap_weight(n, k, ell)? * sum;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalDensity {
        s.parse().unwrap()
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(52, 5), BigUint::from(2_598_960u32));
        assert_eq!(binom(5, 7), BigUint::zero());
        assert_eq!(
            binom(200, 100).to_string(),
            "90548514656103281165404177077484163874504589675413336841320"
        );
    }

    #[test]
    fn exact_examples() {
        let pat = OverlapPattern::new(5, 3, q("3/5"), 0.5).unwrap();
        assert_eq!(overlap_c(&pat, 2).unwrap(), frac(1, 2));
        assert_eq!(ratio_q(&pat, 1).unwrap(), frac(5, 3));
        assert_eq!(g_ell(&pat, 2).unwrap(), frac(3675, 131_072));
        assert_eq!(overlap_weight(6, 3, 2).unwrap(), frac(9, 20));
        let pat3 = OverlapPattern::new(5, 3, q("3/5"), 0.3).unwrap();
        let r = to_f64(&ratio_r(&pat3, 2).unwrap());
        assert!((r - 1.322_751_322_751_322_8).abs() < 1e-12);
    }

    #[test]
    fn large_patterns_rejected() {
        let pat = OverlapPattern::new(25, 5, q("1/2"), 0.3).unwrap();
        assert!(overlap_c(&pat, 3).is_err());
    }
}
