//! Oriented digraphs and the positive-distance neighborhood statistics
//! around a vertex.
//!
//! The positive distance `dist(u, v)` is the length of the shortest
//! non-trivial directed walk from `u` to `v`; in an oriented digraph
//! `dist(u, u) ≥ 3`, so `u` may lie in its own third neighborhood.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("digon between {0} and {1}")]
    Digon(usize, usize),
    #[error("duplicate arc {0} -> {1}")]
    Duplicate(usize, usize),
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("the digraph has no vertices")]
    Empty,
    #[error("vertex {0} has an empty first neighborhood")]
    EmptyFirstNeighborhood(usize),
    #[error("{v} is not an out-neighbor of {u}")]
    NotOutNeighbor { u: usize, v: usize },
    #[error("vertex {0} has out-degree zero")]
    ZeroOutDegree(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Loop-free, digon-free directed graph on vertices `0..n` with sorted
/// adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedDigraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// `d⁺`, `d⁺⁺` and `d⁺⁺⁺` of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexStats {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
}

/// First three positive-distance neighborhoods of a vertex, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhoods {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub third: Vec<usize>,
}

impl Neighborhoods {
    pub fn stats(&self) -> VertexStats {
        VertexStats {
            d1: self.first.len(),
            d2: self.second.len(),
            d3: self.third.len(),
        }
    }
}

/// `d⁺⁺/d⁺`, with `Infinite` standing for `d⁺ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SeymourRatio {
    Finite(Rational),
    Infinite,
}

impl SeymourRatio {
    /// Whether the ratio is at least `mu`.
    pub fn at_least(&self, mu: &Rational) -> bool {
        match self {
            SeymourRatio::Finite(r) => r >= mu,
            SeymourRatio::Infinite => true,
        }
    }
}

impl fmt::Display for SeymourRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeymourRatio::Finite(r) => write!(f, "{r}"),
            SeymourRatio::Infinite => f.write_str("inf"),
        }
    }
}

/// Sizes of the cells `X_ij = {y : dist(u,y) = i, dist(v,y) = j}` for
/// `i ∈ {1,2,3}`; column `j = 4` collects `dist(v,y) ≥ 4` (including ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct PartitionCounts {
    pub cells: [[usize; 4]; 3],
}

impl PartitionCounts {
    /// `|X_ij|` with 1-based `i`, `j`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i - 1][j - 1]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.cells[i - 1].iter().sum()
    }
}

impl OrientedDigraph {
    /// The arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        OrientedDigraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = OrientedDigraph::empty(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Inserts `u → v`, rejecting loops, digons, duplicates and
    /// out-of-range endpoints.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphError::OutOfRange { vertex, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_arc(v, u) {
            return Err(GraphError::Digon(u, v));
        }
        match self.out_adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::Duplicate(u, v)),
            Err(pos) => {
                self.out_adj[u].insert(pos, v);
                let pos_in = self.in_adj[v].binary_search(&u).unwrap_err();
                self.in_adj[v].insert(pos_in, u);
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj
            .get(u)
            .is_some_and(|adj| adj.binary_search(&v).is_ok())
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn min_out_degree(&self) -> Option<usize> {
        self.out_adj.iter().map(Vec::len).min()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Positive distances from `u`; `None` is infinity.
    pub fn positive_distances(&self, u: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(u)?;
        let mut dist: Vec<Option<usize>> = vec![None; self.n()];
        dist[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let next = dist[x].map(|d| d + 1);
            for &y in &self.out_adj[x] {
                if dist[y].is_none() {
                    dist[y] = next;
                    queue.push_back(y);
                }
            }
        }
        // a closed walk at u ends with an arc z → u
        dist[u] = self.in_adj[u]
            .iter()
            .filter_map(|&z| dist[z])
            .min()
            .map(|d| d + 1);
        Ok(dist)
    }

    pub fn neighborhoods(&self, u: usize) -> Result<Neighborhoods, GraphError> {
        let dist = self.positive_distances(u)?;
        let mut nb = Neighborhoods {
            first: Vec::new(),
            second: Vec::new(),
            third: Vec::new(),
        };
        for (y, d) in dist.iter().enumerate() {
            match d {
                Some(1) => nb.first.push(y),
                Some(2) => nb.second.push(y),
                Some(3) => nb.third.push(y),
                _ => {}
            }
        }
        Ok(nb)
    }

    pub fn stats(&self, u: usize) -> Result<VertexStats, GraphError> {
        Ok(self.neighborhoods(u)?.stats())
    }

    /// `d⁺⁺(u) ≥ μ·d⁺(u)`, compared exactly.
    pub fn is_seymour<S: Scalar>(&self, u: usize, mu: &S) -> Result<bool, GraphError> {
        let s = self.stats(u)?;
        let lhs = mu.embed_int(s.d2 as i64);
        let rhs = mu.clone() * mu.embed_int(s.d1 as i64);
        Ok(lhs.cmp_to(&rhs) != Ordering::Less)
    }

    /// Vertex maximizing `d⁺⁺/d⁺`; smallest index on ties.
    pub fn best_seymour_ratio(&self) -> Result<(usize, SeymourRatio), GraphError> {
        let mut best: Option<(usize, SeymourRatio)> = None;
        for u in 0..self.n() {
            let s = self.stats(u)?;
            let ratio = if s.d1 == 0 {
                SeymourRatio::Infinite
            } else {
                SeymourRatio::Finite(Rational::new(BigInt::from(s.d2), BigInt::from(s.d1)))
            };
            if best.as_ref().is_none_or(|(_, r)| ratio > *r) {
                best = Some((u, ratio));
            }
        }
        best.ok_or(GraphError::Empty)
    }

    /// Vertex of minimum out-degree; smallest index on ties.
    pub fn degree_minimizer(&self) -> Result<usize, GraphError> {
        (0..self.n())
            .min_by_key(|&v| (self.out_degree(v), v))
            .ok_or(GraphError::Empty)
    }

    /// The `v ∈ N⁺(u)` minimizing `w·|N⁺(v) ∩ N⁺(u)| + |N⁺(v) ∩ N⁺⁺(u)|`;
    /// smallest index on ties.
    pub fn weighted_minimizer<S: Scalar>(&self, u: usize, w: &S) -> Result<usize, GraphError> {
        let nb = self.neighborhoods(u)?;
        if nb.first.is_empty() {
            return Err(GraphError::EmptyFirstNeighborhood(u));
        }
        let mut best: Option<(usize, S)> = None;
        for &v in &nb.first {
            let score = w.clone() * w.embed_int(count_common(self.out_neighbors(v), &nb.first) as i64)
                + w.embed_int(count_common(self.out_neighbors(v), &nb.second) as i64);
            if best
                .as_ref()
                .is_none_or(|(_, b)| score.cmp_to(b) == Ordering::Less)
            {
                best = Some((v, score));
            }
        }
        Ok(best.expect("nonempty first neighborhood").0)
    }

    /// Cell sizes `|X_ij|` for the pair `(u, v)` with `v ∈ N⁺(u)`.
    pub fn partition_counts(&self, u: usize, v: usize) -> Result<PartitionCounts, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_arc(u, v) {
            return Err(GraphError::NotOutNeighbor { u, v });
        }
        let du = self.positive_distances(u)?;
        let dv = self.positive_distances(v)?;
        let mut counts = PartitionCounts::default();
        for (a, b) in du.iter().zip(&dv) {
            let i = match a {
                Some(i @ 1..=3) => *i,
                _ => continue,
            };
            let j = match b {
                Some(j @ 1..=3) => *j,
                _ => 4,
            };
            counts.cells[i - 1][j - 1] += 1;
        }
        if counts.get(3, 1) != 0 {
            return Err(GraphError::Invariant(format!(
                "X31 nonempty for u = {u}, v = {v}"
            )));
        }
        Ok(counts)
    }

    /// Number of arcs with tail in `a` and head in `b`.
    pub fn edge_count(&self, a: &[usize], b: &[usize]) -> usize {
        let in_b = self.indicator(b);
        a.iter()
            .filter(|&&x| x < self.n())
            .flat_map(|&x| self.out_adj[x].iter())
            .filter(|&&y| in_b[y])
            .count()
    }

    /// `{v ∉ A : some a ∈ A has a → v}`, sorted.
    pub fn out_neighbors_of_set(&self, a: &[usize]) -> Vec<usize> {
        let in_a = self.indicator(a);
        let mut hit = vec![false; self.n()];
        for &x in a.iter().filter(|&&x| x < self.n()) {
            for &y in &self.out_adj[x] {
                hit[y] = !in_a[y];
            }
        }
        (0..self.n()).filter(|&y| hit[y]).collect()
    }

    fn indicator(&self, set: &[usize]) -> Vec<bool> {
        let mut ind = vec![false; self.n()];
        for &x in set.iter().filter(|&&x| x < self.n()) {
            ind[x] = true;
        }
        ind
    }
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}
