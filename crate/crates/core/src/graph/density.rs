use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Edge density γ ∈ [0, 1] kept as a reduced fraction, so that thresholds
/// `⌈γ·S⌉` are computed exactly.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalDensity {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalDensity {
    pub const ONE: Self = Self { num: 1, den: 1 };
    pub const ZERO: Self = Self { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidDensity(format!("{num}/{den}")));
        }
        let g = gcd(num, den).max(1);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    #[inline]
    pub fn num(self) -> u64 {
        self.num
    }

    #[inline]
    pub fn den(self) -> u64 {
        self.den
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn complement(self) -> Self {
        Self {
            num: self.den - self.num,
            den: self.den,
        }
    }

    /// `0 < γ < 1`.
    pub fn is_interior(self) -> bool {
        self.num > 0 && self.num < self.den
    }

    /// `⌈γ·x⌉` in integer arithmetic.
    #[inline]
    pub fn ceil_mul(self, x: u64) -> u64 {
        let prod = self.num as u128 * x as u128;
        prod.div_ceil(self.den as u128) as u64
    }

    /// `⌊γ·x⌋` in integer arithmetic.
    #[inline]
    pub fn floor_mul(self, x: u64) -> u64 {
        (self.num as u128 * x as u128 / self.den as u128) as u64
    }

    /// Minimum edge count `⌈γ·k(k−1)/2⌉` for a k-set to be a γ-quasi-clique.
    #[inline]
    pub fn quasi_threshold(self, k: u64) -> u64 {
        self.ceil_mul(k * k.saturating_sub(1) / 2)
    }
}

impl fmt::Display for RationalDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RationalDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, an integer, or a finite decimal such as `0.85`.
impl FromStr for RationalDensity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDensity(s.to_string());
        let t = s.trim();
        if let Some((a, b)) = t.split_once('/') {
            let num = a.trim().parse::<u64>().map_err(|_| bad())?;
            let den = b.trim().parse::<u64>().map_err(|_| bad())?;
            return Self::new(num, den).map_err(|_| bad());
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.bytes().all(|c| c.is_ascii_digit())
            || !frac.bytes().all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int_part = if int.is_empty() {
            0
        } else {
            int.parse::<u64>().map_err(|_| bad())?
        };
        let frac_part = if frac.is_empty() {
            0
        } else {
            frac.parse::<u64>().map_err(|_| bad())?
        };
        let num = int_part
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac_part))
            .ok_or_else(bad)?;
        Self::new(num, den).map_err(|_| bad())
    }
}

impl Serialize for RationalDensity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalDensity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
