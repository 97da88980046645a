//! Immutable simple undirected graphs stored as bitset adjacency rows.
//!
//! Vertices are dense indices `0..n`. Every constructor validates its input
//! and the resulting [`Graph`] is never mutated afterwards, so it can be
//! shared freely across threads.

mod families;
mod io;

pub use families::{
    attached_clique, complete, complete_bipartite, construct_b_member, construct_exception, cycle,
    empty, path, BFamilySpec, Family,
};
pub use io::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};

use std::collections::VecDeque;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count accepted by the bitset representation.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    InvalidEdge(usize),
    #[error("vertex index {index} out of range for a graph of order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("parse error at byte {offset}: {message}")]
    ParseError { offset: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("graph order {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

impl GraphError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        GraphError::ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// A sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set over a graph of order `n`; input order and repeats are irrelevant.
    pub fn new(members: impl IntoIterator<Item = usize>, n: usize) -> Result<Self, GraphError> {
        let mut v: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&x| x >= n) {
            return Err(GraphError::IndexOutOfRange { index: bad, n });
        }
        v.sort_unstable();
        v.dedup();
        Ok(VertexSet(v))
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Members of the bitmask `mask` (bit `i` is vertex `i`).
    pub fn from_mask(mask: u64) -> Self {
        let mut v = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            v.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `V(G) \ self` for a graph of order `n`.
    pub fn complement_in(&self, n: usize) -> Self {
        VertexSet((0..n).filter(|v| !self.contains(*v)).collect())
    }
}

/// Minimum, average and maximum degree. The average is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub avg: Rational64,
    pub max: usize,
}

impl DegreeStats {
    pub fn is_regular(&self) -> bool {
        self.min == self.max
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Mutable adjacency used while a graph is being assembled.
pub(crate) struct Builder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidParameter(
                "a graph needs at least one vertex".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(GraphError::TooLarge { n, cap: MAX_ORDER });
        }
        let words = n.div_ceil(64);
        Ok(Builder {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: u,
                n: self.n,
            });
        }
        if v >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: v,
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::InvalidEdge(u));
        }
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub(crate) fn finish(self) -> Graph {
        let degree_sum: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        Graph {
            n: self.n,
            words: self.words,
            bits: self.bits,
            m: degree_sum / 2,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges collapse to one.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = Builder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.finish())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Neighborhood of `v` as a bitmask. Only meaningful when `n <= 64`.
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.row(v)[0]
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degs = self.degrees();
        DegreeStats {
            min: degs.iter().copied().min().unwrap_or(0),
            max: degs.iter().copied().max().unwrap_or(0),
            avg: Rational64::new(2 * self.m as i64, self.n as i64),
        }
    }

    /// Number of degree-zero vertices.
    pub fn isolated_count(&self) -> usize {
        (0..self.n)
            .filter(|&v| self.row(v).iter().all(|&w| w == 0))
            .count()
    }

    pub fn complement(&self) -> Graph {
        let mut bits = vec![0u64; self.bits.len()];
        for v in 0..self.n {
            for wi in 0..self.words {
                let lo = wi * 64;
                let valid = if lo + 64 <= self.n {
                    u64::MAX
                } else {
                    (1u64 << (self.n - lo)) - 1
                };
                let mut w = !self.row(v)[wi] & valid;
                if v / 64 == wi {
                    w &= !(1 << (v % 64));
                }
                bits[v * self.words + wi] = w;
            }
        }
        let all_pairs = self.n * (self.n - 1) / 2;
        Graph {
            n: self.n,
            words: self.words,
            bits,
            m: all_pairs - self.m,
        }
    }

    /// Complete product: disjoint union of `self` (vertices `0..n1`) and `other`
    /// (vertices `n1..n1+n2`) plus every edge between the two.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n1 = self.n;
        let mut b = Builder::new(n1 + other.n)?;
        for (u, v) in self.edges() {
            b.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            b.add_edge(n1 + u, n1 + v)?;
        }
        for u in 0..n1 {
            for v in 0..other.n {
                b.add_edge(u, n1 + v)?;
            }
        }
        Ok(b.finish())
    }

    /// Disjoint union with `other` relabeled to `n1..n1+n2`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n1 = self.n;
        let mut b = Builder::new(n1 + other.n)?;
        for (u, v) in self.edges() {
            b.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            b.add_edge(n1 + u, n1 + v)?;
        }
        Ok(b.finish())
    }

    /// `G[S]`, relabeled to `0..|S|` in sorted order of `S`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        if let Some(bad) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::IndexOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        let members = s.as_slice();
        let mut b = Builder::new(members.len())?;
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j)?;
                }
            }
        }
        Ok(b.finish())
    }

    /// `G - v`, relabeling the remaining vertices in order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::IndexOutOfRange {
                index: v,
                n: self.n,
            });
        }
        let keep = VertexSet((0..self.n).filter(|&u| u != v).collect());
        self.induced_subgraph(&keep)
    }

    /// `G - uv`. Deleting a non-edge returns an identical graph.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::IndexOutOfRange {
                    index: x,
                    n: self.n,
                });
            }
        }
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.bits[u * g.words + v / 64] &= !(1 << (v % 64));
            g.bits[v * g.words + u / 64] &= !(1 << (u % 64));
            g.m -= 1;
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = vec![start];
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Two-coloring by BFS. `None` iff the graph has an odd cycle.
    ///
    /// Each component's smallest vertex goes to the first part, so for a
    /// connected graph vertex 0 is always in the first part.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| color[v] == Some(false));
        Some((VertexSet(a), VertexSet(b)))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}
