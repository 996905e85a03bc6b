//! Seeded G(n,p) and G(n,m) generators.
//!
//! All randomness comes from ChaCha8 streams keyed by an explicit [`Seed`];
//! ChaCha output is specified bit-for-bit, so a seed yields the same graph
//! on every platform. Pairs are visited in lexicographic order `i < j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Builder, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// SplitMix64 finalizer: a bijection on `u64`.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Child seed for the pair `(a, b)`, `a < 2^16`, `b < 2^48`.
    ///
    /// `mix64(master ^ mix64(a << 48 | b))`: both steps are bijections, so
    /// distinct pairs in range never collide for a fixed master.
    pub fn derive(self, a: u64, b: u64) -> Seed {
        debug_assert!(a < 1 << 16 && b < 1 << 48);
        let word = (a << 48) | (b & ((1 << 48) - 1));
        Seed(mix64(self.0 ^ mix64(word)))
    }
}

/// Binomial random graph: each of the `C(n,2)` pairs is an edge
/// independently with probability `p`.
pub fn gen_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = seed.rng();
    let mut b = Builder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                b.add(i, j);
            }
        }
    }
    Ok(b.finish())
}

/// Uniform graph with exactly `m` edges.
pub fn gen_gnm(n: usize, m: u64, seed: Seed) -> Result<Graph> {
    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::EdgeCountOutOfRange { m, max: pairs });
    }
    let mut rng = seed.rng();
    let mut b = Builder::new(n);
    let mut picked: Vec<usize> =
        rand::seq::index::sample(&mut rng, pairs as usize, m as usize).into_vec();
    picked.sort_unstable();
    // Walk the lexicographic pair order once, decoding sorted indices.
    let mut next = picked.into_iter().peekable();
    let mut idx = 0usize;
    'outer: for i in 0..n {
        for j in i + 1..n {
            match next.peek() {
                None => break 'outer,
                Some(&t) if t == idx => {
                    b.add(i, j);
                    next.next();
                }
                _ => {}
            }
            idx += 1;
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_is_deterministic() {
        let a = gen_gnp(10, 0.5, Seed(3)).unwrap();
        let b = gen_gnp(10, 0.5, Seed(3)).unwrap();
        assert_eq!(a, b);
        assert!(a.check_invariants());
        let c = gen_gnp(10, 0.3, Seed(1)).unwrap();
        let d = gen_gnp(10, 0.3, Seed(2)).unwrap();
        assert!(c.check_invariants() && d.check_invariants());
    }

    #[test]
    fn gnp_rejects_bad_p() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(gen_gnp(5, p, Seed(0)).is_err());
        }
    }

    #[test]
    fn gnp_mean_edge_count() {
        // Binomial(190, 0.3) has mean 57, sd ≈ 6.3; 2000 draws → se ≈ 0.14.
        let total: usize = (0..2000)
            .map(|s| gen_gnp(20, 0.3, Seed(s)).unwrap().m())
            .sum();
        let mean = total as f64 / 2000.0;
        assert!((mean - 57.0).abs() <= 1.0, "mean {mean}");
    }

    #[test]
    fn gnm_forced_cases() {
        assert_eq!(gen_gnm(5, 10, Seed(9)).unwrap(), Graph::complete(5));
        assert_eq!(gen_gnm(5, 0, Seed(9)).unwrap(), Graph::empty(5));
        assert!(gen_gnm(5, 11, Seed(9)).is_err());
    }

    #[test]
    fn gnm_exact_count_and_determinism() {
        for s in 0..50 {
            let g = gen_gnm(12, 20, Seed(s)).unwrap();
            assert_eq!(g.m(), 20);
            assert!(g.check_invariants());
            assert_eq!(g, gen_gnm(12, 20, Seed(s)).unwrap());
        }
    }

    #[test]
    fn gnm_edge_frequencies_are_uniform() {
        // Each of the 15 pairs appears with probability 5/15 under the uniform
        // model; 20k draws put the ±0.03 band at about nine standard errors.
        let mut hits = [0u32; 15];
        for s in 0..20_000 {
            let g = gen_gnm(6, 5, Seed(s)).unwrap();
            let mut idx = 0;
            for i in 0..6 {
                for j in i + 1..6 {
                    if g.has_edge(i, j) {
                        hits[idx] += 1;
                    }
                    idx += 1;
                }
            }
        }
        for h in hits {
            let f = h as f64 / 20_000.0;
            assert!((f - 1.0 / 3.0).abs() <= 0.03, "frequency {f}");
        }
    }

    #[test]
    fn derived_seeds_do_not_collide() {
        let master = Seed(0xdead_beef);
        let mut seen = std::collections::HashSet::new();
        for a in 0..16 {
            for b in 0..1024 {
                assert!(seen.insert(master.derive(a, b)));
            }
        }
    }
}
