//! Branch-and-bound for the densest k-subgraph: maximize `e(A)` over
//! `|A| = k`, or stop at the first `A` meeting a threshold.
//!
//! A node holds the chosen set and a pool of remaining candidates. The
//! branching vertex is the pool member with most neighbours in the chosen
//! set (then most neighbours in the pool, then lowest index); the include
//! branch is explored first.

use super::{DenseSearch, Meter, SolveStatus};
use crate::graph::{Graph, VertexSet};

struct Cand {
    v: usize,
    /// neighbours already chosen
    c: usize,
    /// neighbours still in the pool
    d: usize,
}

fn top_sum(vals: &mut [usize], r: usize) -> usize {
    if r >= vals.len() {
        return vals.iter().sum();
    }
    vals.select_nth_unstable_by(r, |a, b| b.cmp(a));
    vals[..r].iter().sum()
}

/// Upper bound on `e(chosen ∪ X)` over `X ⊆ pool`, `|X| = r`, given
/// per-candidate counts. Each added vertex contributes its chosen
/// neighbours plus half of at most `min(d, r−1)` new internal edges; the
/// cross term is also capped from the chosen side.
fn bound(
    g: &Graph,
    chosen: &VertexSet,
    pool: &VertexSet,
    e_chosen: usize,
    cands: &[Cand],
    r: usize,
) -> usize {
    if r == 0 {
        return e_chosen;
    }
    let mut w: Vec<usize> = cands.iter().map(|c| 2 * c.c + c.d.min(r - 1)).collect();
    let b1 = e_chosen + top_sum(&mut w, r) / 2;

    let mut cs: Vec<usize> = cands.iter().map(|c| c.c).collect();
    let cross_cand = top_sum(&mut cs, r);
    let cross_chosen: usize = chosen
        .iter()
        .map(|u| pool.intersection_len(g.row(u)).min(r))
        .sum();
    let mut ds: Vec<usize> = cands.iter().map(|c| c.d.min(r - 1)).collect();
    let internal = (top_sum(&mut ds, r) / 2).min(r * (r - 1) / 2);
    let b2 = e_chosen + cross_cand.min(cross_chosen) + internal;
    b1.min(b2)
}

fn candidates(g: &Graph, chosen: &VertexSet, pool: &VertexSet) -> Vec<Cand> {
    pool.iter()
        .map(|v| Cand {
            v,
            c: chosen.intersection_len(g.row(v)),
            d: pool.intersection_len(g.row(v)),
        })
        .collect()
}

/// Optimistic bound for completing `chosen` to `k` vertices from `pool`.
/// Exposed so tests can check it against exhaustive completions.
pub fn completion_bound(g: &Graph, chosen: &VertexSet, pool: &VertexSet, k: usize) -> usize {
    let t = chosen.len();
    assert!(t <= k && k - t <= pool.len());
    let cands = candidates(g, chosen, pool);
    bound(g, chosen, pool, g.edges_within(chosen), &cands, k - t)
}

struct Search<'g> {
    g: &'g Graph,
    k: usize,
    target: Option<usize>,
    best: Option<usize>,
    best_set: Vec<usize>,
}

enum Flow {
    Continue,
    Stop,
}

impl Search<'_> {
    /// Smallest edge count still worth finding.
    fn need(&self) -> usize {
        match (self.target, self.best) {
            (Some(t), _) => t,
            (None, Some(b)) => b + 1,
            (None, None) => 0,
        }
    }

    fn record(&mut self, set: &VertexSet, edges: usize) -> Flow {
        if self.best.is_none_or(|b| edges > b) {
            self.best = Some(edges);
            self.best_set = set.to_vec();
        }
        match self.target {
            Some(t) if edges >= t => Flow::Stop,
            _ => Flow::Continue,
        }
    }

    fn dfs(
        &mut self,
        chosen: &mut VertexSet,
        e_chosen: usize,
        pool: &mut VertexSet,
        meter: &mut Meter,
    ) -> Flow {
        if meter.tick() {
            return Flow::Stop;
        }
        let r = self.k - chosen.len();
        if r == 0 {
            return self.record(chosen, e_chosen);
        }
        let cands = candidates(self.g, chosen, pool);
        if cands.len() < r {
            meter.prunes += 1;
            return Flow::Continue;
        }
        if bound(self.g, chosen, pool, e_chosen, &cands, r) < self.need() {
            meter.prunes += 1;
            return Flow::Continue;
        }
        if cands.len() == r {
            let cross: usize = cands.iter().map(|c| c.c).sum();
            let inner: usize = cands.iter().map(|c| c.d).sum::<usize>() / 2;
            let mut all = chosen.clone();
            for c in &cands {
                all.insert(c.v);
            }
            return self.record(&all, e_chosen + cross + inner);
        }
        let pick = cands
            .iter()
            .max_by(|a, b| (a.c, a.d).cmp(&(b.c, b.d)).then(b.v.cmp(&a.v)))
            .expect("pool is non-empty");
        let (v, c) = (pick.v, pick.c);
        drop(cands);

        pool.remove(v);
        chosen.insert(v);
        let flow = self.dfs(chosen, e_chosen + c, pool, meter);
        chosen.remove(v);
        if let Flow::Stop = flow {
            pool.insert(v);
            return Flow::Stop;
        }
        let flow = self.dfs(chosen, e_chosen, pool, meter);
        pool.insert(v);
        flow
    }
}

/// Runs the search. With `target = Some(t)` it stops at the first set with
/// at least `t` edges and prunes against `t`; otherwise it maximizes.
pub(crate) fn search(g: &Graph, k: usize, target: Option<usize>, meter: &mut Meter) -> DenseSearch {
    let mut s = Search {
        g,
        k,
        target,
        best: None,
        best_set: Vec::new(),
    };
    let mut chosen = VertexSet::empty(g.n());
    let mut pool = VertexSet::full(g.n());
    s.dfs(&mut chosen, 0, &mut pool, meter);
    let status = if meter.exhausted() {
        SolveStatus::Timeout
    } else {
        SolveStatus::Solved
    };
    DenseSearch {
        best: s.best.unwrap_or(0),
        witness: s.best_set,
        status,
    }
}

/// Largest `e(A)` over `|A| = k` if it exceeds `floor`, with a witness.
/// Pruning starts at `floor + 1`, so graphs with no such set finish fast.
pub(crate) fn max_above(
    g: &Graph,
    k: usize,
    floor: usize,
    meter: &mut Meter,
) -> Option<(usize, Vec<usize>)> {
    let mut s = Search {
        g,
        k,
        target: None,
        best: Some(floor),
        best_set: Vec::new(),
    };
    let mut chosen = VertexSet::empty(g.n());
    let mut pool = VertexSet::full(g.n());
    s.dfs(&mut chosen, 0, &mut pool, meter);
    match s.best {
        Some(b) if b > floor => Some((b, s.best_set)),
        _ => None,
    }
}
