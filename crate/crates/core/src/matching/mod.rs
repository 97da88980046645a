//! Fractional matching number through the bipartite double cover, its
//! half-integral witness, and brute-force oracles for small graphs.
//!
//! Everything here is exact integer arithmetic. A fractional matching value
//! is carried as a [`HalfInt`], the number of halves.

mod brute;

pub use brute::{
    brute_force_deficiency, brute_force_matching_number, DeficiencyWitness, DEFAULT_BRUTE_CAP,
};

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("weight {halves}/2 on edge ({u},{v}) is outside [0, 1]")]
    InvalidWeight { u: usize, v: usize, halves: u32 },
    #[error("({u},{v}) is not an edge of the graph")]
    UnknownEdge { u: usize, v: usize },
    #[error("edge ({u},{v}) is weighted more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph order {n} exceeds the brute-force cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A non-negative multiple of 1/2, stored as the number of halves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(u64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_halves(halves: u64) -> Self {
        HalfInt(halves)
    }

    pub fn from_integer(x: u64) -> Self {
        HalfInt(2 * x)
    }

    /// Twice the value; always an integer.
    pub fn halves(self) -> u64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl FromStr for HalfInt {
    type Err = String;

    /// Accepts `p/2` or a plain integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not of the form p/2");
        match s.split_once('/') {
            Some((p, "2")) => p.trim().parse().map(HalfInt).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s
                .trim()
                .parse::<u64>()
                .map(HalfInt::from_integer)
                .map_err(|_| bad()),
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of pairwise disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub edges: Vec<(usize, usize)>,
    pub size: usize,
}

/// Weight `numerator / 2` on edge `(u, v)`, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWeight {
    pub u: usize,
    pub v: usize,
    pub numerator: u32,
}

/// Edge weights in `{0, 1/2, 1}` with their total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalMatching {
    pub edges: Vec<EdgeWeight>,
    pub total: HalfInt,
}

/// Two copies `v` and `n + v` of every vertex; each edge `uv` becomes
/// `u ~ n+v` and `n+u ~ v`.
pub fn double_cover(g: &Graph) -> Result<Graph, GraphError> {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (u, v) in g.edges() {
        edges.push((u, n + v));
        edges.push((n + u, v));
    }
    Graph::from_edge_list(2 * n, &edges)
}

/// Hopcroft-Karp on an explicit left-side adjacency. Returns the partner
/// (right index) of every left vertex.
fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let left = adj.len();
    let mut pair_l: Vec<Option<usize>> = vec![None; left];
    let mut pair_r: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![INF; left];
    let mut next = vec![0usize; left];
    let mut queue = VecDeque::new();

    loop {
        // layer the free left vertices
        queue.clear();
        for u in 0..left {
            if pair_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match pair_r[v] {
                    None => reachable_free = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !reachable_free {
            break;
        }

        next.iter_mut().for_each(|i| *i = 0);
        for root in 0..left {
            if pair_l[root].is_some() {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if next[u] == adj[u].len() {
                    dist[u] = INF;
                    stack.pop();
                    if let Some(&parent) = stack.last() {
                        next[parent] += 1;
                    }
                    continue;
                }
                let v = adj[u][next[u]];
                match pair_r[v] {
                    None => {
                        for &x in &stack {
                            let y = adj[x][next[x]];
                            pair_l[x] = Some(y);
                            pair_r[y] = Some(x);
                        }
                        break;
                    }
                    Some(w) if dist[w] != INF && dist[w] == dist[u] + 1 => stack.push(w),
                    Some(_) => next[u] += 1,
                }
            }
        }
    }
    pair_l
}

/// Maximum matching of a bipartite graph.
pub fn max_matching_bipartite(g: &Graph) -> Result<MatchingResult, MatchingError> {
    let (left, right) = g.bipartition().ok_or(MatchingError::NotBipartite)?;
    let mut right_index = vec![usize::MAX; g.n()];
    for (i, v) in right.iter().enumerate() {
        right_index[v] = i;
    }
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|u| g.neighbors(u).map(|v| right_index[v]).collect())
        .collect();
    let pairs = hopcroft_karp(&adj, right.len());
    let mut edges: Vec<(usize, usize)> = left
        .iter()
        .zip(&pairs)
        .filter_map(|(u, p)| {
            p.map(|r| {
                let v = right.as_slice()[r];
                (u.min(v), u.max(v))
            })
        })
        .collect();
    edges.sort_unstable();
    Ok(MatchingResult {
        size: edges.len(),
        edges,
    })
}

/// Partner of each `u` (as an original vertex) in a maximum matching of the
/// double cover, i.e. `x(u, v') = 1` iff `result[u] == Some(v)`.
fn double_cover_pairs(g: &Graph) -> Vec<Option<usize>> {
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|u| g.neighbors(u).collect()).collect();
    hopcroft_karp(&adj, g.n())
}

/// `alpha'_*(G)`, as half the matching number of the double cover.
pub fn fractional_matching_number(g: &Graph) -> HalfInt {
    let matched = double_cover_pairs(g).iter().flatten().count();
    HalfInt::from_halves(matched as u64)
}

/// An optimal fractional matching with values in `{0, 1/2, 1}`:
/// `f(uv) = (x(u,v') + x(u',v)) / 2`.
pub fn extract_fractional_matching(g: &Graph) -> FractionalMatching {
    let pairs = double_cover_pairs(g);
    let edges: Vec<EdgeWeight> = g
        .edges()
        .map(|(u, v)| EdgeWeight {
            u,
            v,
            numerator: (pairs[u] == Some(v)) as u32 + (pairs[v] == Some(u)) as u32,
        })
        .collect();
    let total = HalfInt::from_halves(edges.iter().map(|e| e.numerator as u64).sum());
    FractionalMatching { edges, total }
}

/// Checks `f` edge by edge and vertex by vertex. Returns whether every
/// vertex load is at most 1, and the total weight.
pub fn verify_fractional_matching(
    g: &Graph,
    f: &FractionalMatching,
) -> Result<(bool, HalfInt), MatchingError> {
    let mut load = vec![0u64; g.n()];
    let mut seen = HashSet::new();
    let mut total = 0u64;
    for e in &f.edges {
        let (u, v) = (e.u.min(e.v), e.u.max(e.v));
        if !g.has_edge(u, v) {
            return Err(MatchingError::UnknownEdge { u: e.u, v: e.v });
        }
        if e.numerator > 2 {
            return Err(MatchingError::InvalidWeight {
                u: e.u,
                v: e.v,
                halves: e.numerator,
            });
        }
        if !seen.insert((u, v)) {
            return Err(MatchingError::DuplicateEdge { u, v });
        }
        load[u] += e.numerator as u64;
        load[v] += e.numerator as u64;
        total += e.numerator as u64;
    }
    Ok((load.iter().all(|&l| l <= 2), HalfInt::from_halves(total)))
}

/// `alpha'_*(G) = n/2`.
pub fn has_fractional_perfect_matching(g: &Graph) -> bool {
    fractional_matching_number(g).halves() == g.n() as u64
}
