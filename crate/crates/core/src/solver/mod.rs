//! Exact computation of ω_γ(G), the order of the largest γ-quasi-clique.
//!
//! [`omega_gamma`] starts from a greedy peeling lower bound and scans `k`
//! upward with the decision version of a max-edges branch-and-bound. The
//! scan may stop at the first infeasible `k`: deleting a minimum-degree
//! vertex from a γ-quasi-clique on `j` vertices leaves one on `j − 1`, so
//! feasibility is monotone in `k`.

mod bnb;
mod brute;
mod peel;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use bnb::completion_bound;
pub(crate) use bnb::max_above as max_edges_above;
pub use brute::{brute_force_omega, BRUTE_FORCE_LIMIT};
pub use peel::greedy_peel;

use crate::error::{Error, Result};
use crate::graph::{Graph, RationalDensity};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        max_nodes: None,
        max_time: None,
    };

    pub fn time(limit: Duration) -> Self {
        Self {
            max_nodes: None,
            max_time: Some(limit),
        }
    }

    pub fn nodes(limit: u64) -> Self {
        Self {
            max_nodes: Some(limit),
            max_time: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub elapsed_secs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Solved,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    /// ω_γ(G) when solved; otherwise the best verified lower bound.
    pub omega: usize,
    pub witness: Vec<usize>,
    pub stats: SearchStats,
    pub status: SolveStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSearch {
    /// Largest `e(A)` found over `|A| = k`; exact when `status` is `Solved`.
    pub best: usize,
    pub witness: Vec<usize>,
    pub status: SolveStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<usize>),
    Infeasible,
    /// Budget ran out before the question was settled.
    Timeout,
}

/// Node and time accounting shared by every search in one solve call.
pub(crate) struct Meter {
    start: Instant,
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    pub(crate) nodes: u64,
    pub(crate) prunes: u64,
    exhausted: bool,
}

impl Meter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        let start = Instant::now();
        Self {
            start,
            deadline: budget.max_time.map(|d| start + d),
            max_nodes: budget.max_nodes,
            nodes: 0,
            prunes: 0,
            exhausted: false,
        }
    }

    /// Counts one node; returns `true` once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            self.exhausted = true;
        }
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.exhausted = true;
        }
        self.exhausted
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            prunes: self.prunes,
            elapsed_secs: self.start.elapsed().as_secs_f64(),
        }
    }
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k == 0 || k > g.n() {
        return Err(Error::domain(format!(
            "subset size {k} outside [1, {}]",
            g.n()
        )));
    }
    Ok(())
}

/// Maximum of `e(A)` over all `k`-subsets.
pub fn max_edges_of_size_k(g: &Graph, k: usize, budget: SearchBudget) -> Result<DenseSearch> {
    check_k(g, k)?;
    let mut meter = Meter::new(budget);
    Ok(bnb::search(g, k, None, &mut meter))
}

/// Whether some `k`-subset spans at least `⌈γ·C(k,2)⌉` edges.
pub fn feasible_k(
    g: &Graph,
    k: usize,
    gamma: RationalDensity,
    budget: SearchBudget,
) -> Result<Feasibility> {
    check_k(g, k)?;
    let mut meter = Meter::new(budget);
    Ok(decide(g, k, gamma, &mut meter))
}

/// Decision search for `e(A) >= threshold` over `|A| = k`.
pub(crate) fn decide_threshold(
    g: &Graph,
    k: usize,
    threshold: usize,
    meter: &mut Meter,
) -> Feasibility {
    let res = bnb::search(g, k, Some(threshold), meter);
    if res.best >= threshold && res.witness.len() == k {
        Feasibility::Feasible(res.witness)
    } else if res.status == SolveStatus::Timeout {
        Feasibility::Timeout
    } else {
        Feasibility::Infeasible
    }
}

fn decide(g: &Graph, k: usize, gamma: RationalDensity, meter: &mut Meter) -> Feasibility {
    decide_threshold(g, k, gamma.quasi_threshold(k as u64) as usize, meter)
}

/// ω_γ(G) with a witness.
pub fn omega_gamma(g: &Graph, gamma: RationalDensity, budget: SearchBudget) -> SolveOutcome {
    let mut meter = Meter::new(budget);
    if g.n() == 0 {
        return SolveOutcome {
            omega: 0,
            witness: vec![],
            stats: meter.stats(),
            status: SolveStatus::Solved,
        };
    }
    let (mut omega, mut witness) = greedy_peel(g, gamma);
    let mut status = SolveStatus::Solved;
    for k in omega + 1..=g.n() {
        match decide(g, k, gamma, &mut meter) {
            Feasibility::Feasible(w) => {
                omega = k;
                witness = w;
            }
            Feasibility::Infeasible => break,
            Feasibility::Timeout => {
                status = SolveStatus::Timeout;
                break;
            }
        }
    }
    SolveOutcome {
        omega,
        witness,
        stats: meter.stats(),
        status,
    }
}
