//! Simple undirected graphs with bitset adjacency rows, seeded random
//! models, and the γ-quasi-clique predicate.

mod bitset;
mod density;
pub mod edgelist;
mod random;

pub use bitset::VertexSet;
pub use density::RationalDensity;
pub use random::{gen_gnm, gen_gnp, Seed};

use crate::error::{Error, Result};

/// Immutable simple graph on vertices `0..n`.
///
/// Row `v` holds the neighbourhood of `v` as a bitset of width `n`; the
/// edge count is cached at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = Builder::new(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            b.add(u, v);
        }
        Ok(b.finish())
    }

    pub fn empty(n: usize) -> Self {
        Builder::new(n).finish()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = Builder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add(u, v);
            }
        }
        b.finish()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = Builder::new(n);
        if n >= 3 {
            for u in 0..n {
                b.add(u, (u + 1) % n);
            }
        } else if n == 2 {
            b.add(0, 1);
        }
        b.finish()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }

    /// `e(A)` for a set whose capacity matches this graph.
    #[inline]
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        debug_assert_eq!(set.capacity(), self.n);
        set.iter()
            .map(|v| set.intersection_len(self.row(v)))
            .sum::<usize>()
            / 2
    }

    /// `e(A)` for an explicit vertex list.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> Result<usize> {
        let set = VertexSet::from_vertices(self.n, vertices)?;
        Ok(self.edges_within(&set))
    }

    /// Whether `vertices` spans at least `⌈γ·C(|A|,2)⌉` edges.
    pub fn is_quasi_clique(&self, vertices: &[usize], gamma: RationalDensity) -> Result<bool> {
        let set = VertexSet::from_vertices(self.n, vertices)?;
        Ok(self.set_is_quasi_clique(&set, gamma))
    }

    pub fn set_is_quasi_clique(&self, set: &VertexSet, gamma: RationalDensity) -> bool {
        self.edges_within(set) as u64 >= gamma.quasi_threshold(set.len() as u64)
    }

    /// Checks symmetry, loop-freeness and the cached edge count.
    pub fn check_invariants(&self) -> bool {
        let mut ones = 0usize;
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            for v in 0..self.n {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return false;
                }
            }
            ones += self.degree(u);
        }
        // Padding bits past n must stay clear.
        let pad_clear = (0..self.n).all(|u| {
            let row = self.row(u);
            match self.n % 64 {
                0 => true,
                r => row[self.words - 1] >> r == 0,
            }
        });
        pad_clear && ones == 2 * self.m
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Mutable accumulator used by constructors and generators; the finished
/// [`Graph`] is immutable.
pub(crate) struct Builder {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Self {
        let words = bitset::words_for(n).max(1);
        Self {
            n,
            words,
            adj: vec![0; n * words],
            m: 0,
        }
    }

    /// Adds `{u, v}`; caller guarantees `u != v`, both `< n`.
    pub(crate) fn add(&mut self, u: usize, v: usize) {
        let (wu, bu) = (u * self.words + v / 64, 1u64 << (v % 64));
        if self.adj[wu] & bu == 0 {
            self.adj[wu] |= bu;
            self.adj[v * self.words + u / 64] |= 1u64 << (u % 64);
            self.m += 1;
        }
    }

    pub(crate) fn finish(self) -> Graph {
        Graph {
            n: self.n,
            words: self.words,
            adj: self.adj,
            m: self.m,
        }
    }
}
