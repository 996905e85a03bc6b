//! γ-flatness: a k-vertex graph is γ-flat when it has exactly `⌈γ·C(k,2)⌉`
//! edges and every `A` with `|A| = ℓ ∈ [2, k−1]` satisfies
//! `e(A) <= γ·C(ℓ,2) + D_k(ℓ)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dk_unchecked;
use crate::error::{Error, Result};
use crate::graph::{gen_gnm, Graph, RationalDensity, Seed};
use crate::solver::{self, Meter, SearchBudget};

/// Graphs up to this order are checked by enumerating every subset.
pub const EXHAUSTIVE_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatnessViolation {
    pub ell: usize,
    /// `Y_ℓ`: subsets of order ℓ above the bound. A lower bound when
    /// `count_exact` is false.
    pub count: u64,
    pub count_exact: bool,
    /// A subset with the most edges among the violators.
    pub witness: Vec<usize>,
    pub edges: usize,
    /// `γ·C(ℓ,2) + D_k(ℓ)`
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub is_flat: bool,
    pub edge_count_ok: bool,
    pub violations: Vec<FlatnessViolation>,
}

fn subset_bound(k: usize, ell: usize, gamma: RationalDensity) -> f64 {
    let t = (ell * (ell - 1) / 2) as f64;
    gamma.num() as f64 * t / gamma.den() as f64 + dk_unchecked(k as u64, ell as u64)
}

pub fn flatness_report(g: &Graph, gamma: RationalDensity) -> Result<FlatnessReport> {
    let k = g.n();
    if k < 3 {
        return Err(Error::domain(format!("flatness needs k >= 3, got {k}")));
    }
    let edge_count_ok = g.m() as u64 == gamma.quasi_threshold(k as u64);
    let violations = if k <= EXHAUSTIVE_LIMIT {
        exhaustive(g, gamma)
    } else {
        searched(g, gamma)
    };
    Ok(FlatnessReport {
        is_flat: edge_count_ok && violations.is_empty(),
        edge_count_ok,
        violations,
    })
}

fn exhaustive(g: &Graph, gamma: RationalDensity) -> Vec<FlatnessViolation> {
    let k = g.n();
    let rows: Vec<u32> = (0..k)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let bounds: Vec<f64> = (0..k)
        .map(|l| {
            if l >= 2 {
                subset_bound(k, l, gamma)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    // (count, best edges, best mask) per ℓ
    let mut acc: Vec<(u64, u16, u32)> = vec![(0, 0, 0); k];
    let mut e = vec![0u16; 1 << k];
    for mask in 1u32..(1u32 << k) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let edges = e[rest as usize] + (rows[low] & rest).count_ones() as u16;
        e[mask as usize] = edges;
        let ell = mask.count_ones() as usize;
        if ell >= 2 && ell < k && edges as f64 > bounds[ell] {
            let slot = &mut acc[ell];
            if slot.0 == 0 || edges > slot.1 {
                slot.1 = edges;
                slot.2 = mask;
            }
            slot.0 += 1;
        }
    }
    acc.iter()
        .enumerate()
        .filter(|(_, a)| a.0 > 0)
        .map(|(ell, &(count, edges, mask))| FlatnessViolation {
            ell,
            count,
            count_exact: true,
            witness: (0..k).filter(|&v| mask >> v & 1 == 1).collect(),
            edges: edges as usize,
            bound: bounds[ell],
        })
        .collect()
}

/// Caps on `max e(A)` over `|A| = ℓ` that need no search.
fn cheap_cap(g: &Graph, sorted_deg: &[usize], ell: usize) -> usize {
    let k = g.n();
    let pairs = ell * (ell - 1) / 2;
    // Σ over A of min(deg, ℓ−1), halved.
    let deg_cap = sorted_deg
        .iter()
        .rev()
        .take(ell)
        .map(|&d| d.min(ell - 1))
        .sum::<usize>()
        / 2;
    // Edges touching the complement B = V∖A number at least
    // Σ_B deg − e(B) >= Σ_B deg − C(|B|,2).
    let delta = k - ell;
    let touching = sorted_deg[..delta]
        .iter()
        .sum::<usize>()
        .saturating_sub(delta * delta.saturating_sub(1) / 2);
    let complement_cap = g.m().saturating_sub(touching);
    pairs.min(deg_cap).min(complement_cap)
}

fn searched(g: &Graph, gamma: RationalDensity) -> Vec<FlatnessViolation> {
    let k = g.n();
    let mut sorted_deg = g.degrees();
    sorted_deg.sort_unstable();
    let mut out = Vec::new();
    for ell in 2..k {
        let bound = subset_bound(k, ell, gamma);
        if cheap_cap(g, &sorted_deg, ell) as f64 <= bound {
            continue;
        }
        let floor = bound.floor() as usize;
        let mut meter = Meter::new(SearchBudget::UNLIMITED);
        let res = solver::max_edges_above(g, ell, floor, &mut meter);
        if let Some((edges, witness)) = res {
            out.push(FlatnessViolation {
                ell,
                count: 1,
                count_exact: false,
                witness,
                edges,
                bound,
            });
        }
    }
    out
}

/// Per-draw flatness outcome of [`sample_flatness`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatnessSample {
    pub index: u64,
    pub seed: u64,
    pub is_flat: bool,
    /// Orders ℓ with at least one violating subset.
    pub violated_ells: Vec<usize>,
}

/// Draws `samples` graphs `G(k, ⌈γ·C(k,2)⌉)`, draw `i` from
/// `seed.derive(0, i)`, and checks each for flatness. Output order is by
/// draw index regardless of scheduling.
pub fn sample_flatness(
    k: usize,
    gamma: RationalDensity,
    samples: u64,
    seed: Seed,
) -> Result<Vec<FlatnessSample>> {
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    if k < 3 {
        return Err(Error::domain(format!("flatness needs k >= 3, got {k}")));
    }
    let m = gamma.quasi_threshold(k as u64);
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = seed.derive(0, i);
            let g = gen_gnm(k, m, s)?;
            let rep = flatness_report(&g, gamma)?;
            Ok(FlatnessSample {
                index: i,
                seed: s.0,
                is_flat: rep.is_flat,
                violated_ells: rep.violations.iter().map(|v| v.ell).collect(),
            })
        })
        .collect()
}

/// Fraction of `G(k, ⌈γ·C(k,2)⌉)` draws that are γ-flat.
pub fn sample_flat_fraction(
    k: usize,
    gamma: RationalDensity,
    samples: u64,
    seed: Seed,
) -> Result<f64> {
    let rows = sample_flatness(k, gamma, samples, seed)?;
    Ok(rows.iter().filter(|r| r.is_flat).count() as f64 / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalDensity {
        s.parse().unwrap()
    }

    #[test]
    fn small_named_graphs() {
        let rep = flatness_report(&Graph::complete(5), RationalDensity::ONE).unwrap();
        assert!(rep.is_flat && rep.edge_count_ok);
        let rep = flatness_report(&Graph::cycle(5), q("1/2")).unwrap();
        assert!(rep.is_flat, "{rep:?}");
        assert!(flatness_report(&Graph::complete(2), q("1/2")).is_err());
    }

    #[test]
    fn wrong_edge_count_is_not_flat() {
        let rep = flatness_report(&Graph::cycle(6), q("1/2")).unwrap();
        assert!(!rep.edge_count_ok && !rep.is_flat);
        let rep = flatness_report(&Graph::complete(25), q("1/2")).unwrap();
        assert!(!rep.edge_count_ok && !rep.is_flat);
    }

    /// All edges packed into the first `k − 1` vertices, lexicographically.
    fn packed(k: usize, m: usize) -> Graph {
        let mut edges = Vec::new();
        'outer: for i in 0..k - 1 {
            for j in i + 1..k - 1 {
                if edges.len() == m {
                    break 'outer;
                }
                edges.push((i, j));
            }
        }
        Graph::new(k, &edges).unwrap()
    }

    #[test]
    fn isolated_vertex_construction_k100() {
        let g = packed(100, 2475);
        assert_eq!(g.m(), 2475);
        let rep = flatness_report(&g, q("1/2")).unwrap();
        assert!(rep.edge_count_ok);
        assert!(!rep.is_flat);
        let v = rep
            .violations
            .iter()
            .find(|v| v.ell == 99)
            .expect("ℓ = 99 violated");
        assert_eq!(v.edges, 2475);
        assert!((v.bound - (2425.5 + 45.820_864_807_961_07)).abs() < 1e-9);
        assert!(!v.witness.contains(&99));
    }

    #[test]
    fn search_mode_agrees_with_exhaustive() {
        // Packed constructions at k = 12..=16 violate; random G(k, m) do not.
        for k in [12usize, 14, 16] {
            let gamma = q("1/2");
            let m = gamma.quasi_threshold(k as u64) as usize;
            for g in [packed(k, m), gen_gnm(k, m as u64, Seed(k as u64)).unwrap()] {
                let full = exhaustive(&g, gamma);
                let fast = searched(&g, gamma);
                let ells = |v: &[FlatnessViolation]| {
                    v.iter().map(|x| (x.ell, x.edges)).collect::<Vec<_>>()
                };
                assert_eq!(ells(&full), ells(&fast), "k = {k}");
            }
        }
    }

    #[test]
    fn triangle_samples_always_flat() {
        assert_eq!(sample_flat_fraction(3, q("1/2"), 20, Seed(4)).unwrap(), 1.0);
        assert!(sample_flat_fraction(3, q("1/2"), 0, Seed(4)).is_err());
    }

    #[test]
    fn sampling_is_deterministic_across_pools() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| sample_flatness(12, q("3/5"), 24, Seed(77)).unwrap())
        };
        assert_eq!(run(1), run(3));
    }
}
