//! Exhaustive ω_γ by enumerating all `2^n` vertex subsets. Independent of
//! the branch-and-bound path; used as its oracle.

use std::time::Instant;

use super::{SearchStats, SolveOutcome, SolveStatus};
use crate::error::{Error, Result};
use crate::graph::{Graph, RationalDensity};

pub const BRUTE_FORCE_LIMIT: usize = 26;

struct Enum<'a> {
    n: usize,
    rows: &'a [u32],
    thresholds: &'a [u64],
    best_size: usize,
    best_mask: u32,
    leaves: u64,
}

impl Enum<'_> {
    // Include-before-exclude order visits equal-size subsets in
    // lexicographic order of their sorted vertex lists, so keeping only
    // strict improvements yields the lexicographically least witness.
    fn walk(&mut self, v: usize, mask: u32, size: usize, edges: u64) {
        if v == self.n {
            self.leaves += 1;
            if size > self.best_size && edges >= self.thresholds[size] {
                self.best_size = size;
                self.best_mask = mask;
            }
            return;
        }
        // No completion can beat the current best.
        if size + (self.n - v) <= self.best_size {
            return;
        }
        let added = (self.rows[v] & mask).count_ones() as u64;
        self.walk(v + 1, mask | 1 << v, size + 1, edges + added);
        self.walk(v + 1, mask, size, edges);
    }
}

pub fn brute_force_omega(g: &Graph, gamma: RationalDensity) -> Result<SolveOutcome> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::GraphTooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let start = Instant::now();
    let rows: Vec<u32> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| g.has_edge(v, u))
                .fold(0u32, |m, u| m | 1 << u)
        })
        .collect();
    let thresholds: Vec<u64> = (0..=n as u64).map(|k| gamma.quasi_threshold(k)).collect();
    let mut e = Enum {
        n,
        rows: &rows,
        thresholds: &thresholds,
        best_size: 0,
        best_mask: 0,
        leaves: 0,
    };
    e.walk(0, 0, 0, 0);
    let witness: Vec<usize> = (0..n).filter(|&v| e.best_mask >> v & 1 == 1).collect();
    Ok(SolveOutcome {
        omega: e.best_size,
        witness,
        stats: SearchStats {
            nodes: e.leaves,
            prunes: 0,
            elapsed_secs: start.elapsed().as_secs_f64(),
        },
        status: SolveStatus::Solved,
    })
}
