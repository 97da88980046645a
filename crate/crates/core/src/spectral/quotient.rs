//! Vertex partitions, quotient matrices and equitable partitions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::jacobi::jacobi_eigen;
use super::{sort_desc, SpectralError, SymMatrix};
use crate::graph::{Graph, VertexSet};

/// Assignment of every vertex `0..n` to one of the blocks `0..t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    assignment: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Block labels must be exactly `0..t` with every label used.
    pub fn new(assignment: Vec<usize>) -> Result<Self, SpectralError> {
        let blocks = assignment.iter().max().map_or(0, |&b| b + 1);
        let mut used = vec![false; blocks];
        for &b in &assignment {
            used[b] = true;
        }
        if let Some(empty) = used.iter().position(|u| !u) {
            return Err(SpectralError::InvalidPartition(format!(
                "block {empty} is empty"
            )));
        }
        Ok(Partition { assignment, blocks })
    }

    /// Builds a partition from explicit blocks covering `0..n` exactly once.
    pub fn from_blocks(blocks: &[VertexSet], n: usize) -> Result<Self, SpectralError> {
        let mut assignment = vec![usize::MAX; n];
        for (b, set) in blocks.iter().enumerate() {
            for v in set.iter() {
                if v >= n || assignment[v] != usize::MAX {
                    return Err(SpectralError::InvalidPartition(format!(
                        "vertex {v} is out of range or in two blocks"
                    )));
                }
                assignment[v] = b;
            }
        }
        if let Some(v) = assignment.iter().position(|&b| b == usize::MAX) {
            return Err(SpectralError::InvalidPartition(format!(
                "vertex {v} is in no block"
            )));
        }
        Partition::new(assignment)
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn order(&self) -> usize {
        self.assignment.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.blocks];
        for &b in &self.assignment {
            s[b] += 1;
        }
        s
    }

    pub fn blocks(&self) -> Vec<VertexSet> {
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &b) in self.assignment.iter().enumerate() {
            out[b].push(v);
        }
        out.into_iter()
            .map(|members| VertexSet::new(members, self.order()).expect("members are in range"))
            .collect()
    }
}

/// Block-averaged matrix: entry `(i, j)` is the average row sum of block
/// `M[V_i, V_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    order: usize,
    entries: Vec<f64>,
    exact: Option<Vec<Rational64>>,
    sizes: Vec<usize>,
    block_sums: Vec<f64>,
}

pub fn quotient_matrix(m: &SymMatrix, p: &Partition) -> Result<QuotientMatrix, SpectralError> {
    if p.order() != m.order() {
        return Err(SpectralError::InvalidPartition(format!(
            "partition covers {} vertices but the matrix has order {}",
            p.order(),
            m.order()
        )));
    }
    let t = p.block_count();
    let sizes = p.sizes();
    let mut sums = vec![0.0; t * t];
    for u in 0..m.order() {
        let bu = p.block_of(u);
        for v in 0..m.order() {
            sums[bu * t + p.block_of(v)] += m.get(u, v);
        }
    }
    let entries = (0..t * t)
        .map(|ij| sums[ij] / sizes[ij / t] as f64)
        .collect();
    let exact = m.is_integral().then(|| {
        (0..t * t)
            .map(|ij| Rational64::new(sums[ij] as i64, sizes[ij / t] as i64))
            .collect()
    });
    Ok(QuotientMatrix {
        order: t,
        entries,
        exact,
        sizes,
        block_sums: sums,
    })
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Exact entry, available when the source matrix was integral.
    pub fn exact(&self, i: usize, j: usize) -> Option<Rational64> {
        self.exact.as_ref().map(|e| e[i * self.order + j])
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Eigenvalues in non-increasing order.
    ///
    /// The quotient is similar to the symmetric `D^{-1/2} B D^{-1/2}` where
    /// `B` holds block sums and `D` block sizes, so its spectrum is real.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SpectralError> {
        let t = self.order;
        let mut ev = match t {
            1 => vec![self.entries[0]],
            2 => {
                let (a, b, c, d) = (
                    self.get(0, 0),
                    self.get(0, 1),
                    self.get(1, 0),
                    self.get(1, 1),
                );
                let tr = a + d;
                let disc = ((a - d) * (a - d) + 4.0 * b * c).max(0.0).sqrt();
                vec![(tr + disc) / 2.0, (tr - disc) / 2.0]
            }
            _ => {
                let mut s = vec![0.0; t * t];
                for i in 0..t {
                    for j in 0..t {
                        s[i * t + j] = self.block_sums[i * t + j]
                            / ((self.sizes[i] * self.sizes[j]) as f64).sqrt();
                    }
                }
                jacobi_eigen(&s, t, 1e-14, false)?.0
            }
        };
        sort_desc(&mut ev);
        Ok(ev)
    }

    /// Largest eigenvalue as a closed-form quadratic for `t <= 2`:
    /// `(trace + sqrt(disc)) / 2`.
    pub fn radius_quadratic(&self) -> Option<QuadraticRadius> {
        let e = self.exact.as_ref()?;
        match self.order {
            1 => Some(QuadraticRadius {
                trace: e[0] * 2,
                disc: Rational64::zero(),
            }),
            2 => {
                let (a, b, c, d) = (e[0], e[1], e[2], e[3]);
                Some(QuadraticRadius {
                    trace: a + d,
                    disc: (a - d) * (a - d) + b * c * 4,
                })
            }
            _ => None,
        }
    }
}

/// A number `(trace + sqrt(disc)) / 2` with rational `trace` and `disc >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticRadius {
    pub trace: Rational64,
    pub disc: Rational64,
}

impl QuadraticRadius {
    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, c: Rational64) -> Ordering {
        // (T + sqrt D)/2 vs c  <=>  sqrt D vs 2c - T
        let w = c * 2 - self.trace;
        if w.is_negative() {
            return Ordering::Greater;
        }
        self.disc.cmp(&(w * w))
    }

    pub fn cmp_quadratic(&self, other: &QuadraticRadius) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        if let Some(b) = other.as_rational() {
            return self.cmp_rational(b);
        }
        if let Some(a) = self.as_rational() {
            return other.cmp_rational(a).reverse();
        }
        // both irrational: fall back to floating point, exact equality is
        // only possible when the pairs coincide
        if self == other {
            return Ordering::Equal;
        }
        self.to_f64()
            .partial_cmp(&other.to_f64())
            .unwrap_or(Ordering::Equal)
    }

    /// The value when `disc` is the square of a rational.
    pub fn as_rational(&self) -> Option<Rational64> {
        let root = rational_sqrt(self.disc)?;
        Some((self.trace + root) / 2)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        (f(self.trace) + f(self.disc).max(0.0).sqrt()) / 2.0
    }
}

impl fmt::Display for QuadraticRadius {
    /// `p/q` when rational, `(T + sqrt(D))/2` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "({} + sqrt({}))/2", self.trace, self.disc),
        }
    }
}

fn rational_sqrt(r: Rational64) -> Option<Rational64> {
    if r.is_negative() {
        return None;
    }
    let isqrt = |x: i64| -> Option<i64> {
        let mut s = (x as f64).sqrt() as i64;
        while s * s > x {
            s -= 1;
        }
        while (s + 1) * (s + 1) <= x {
            s += 1;
        }
        (s * s == x).then_some(s)
    };
    Some(Rational64::new(isqrt(*r.numer())?, isqrt(*r.denom())?))
}

/// Whether every vertex of block `i` has the same number of neighbors in
/// block `j`, for all `i, j`.
pub fn is_equitable(g: &Graph, p: &Partition) -> bool {
    if p.order() != g.n() {
        return false;
    }
    let t = p.block_count();
    let mut reference: Vec<Option<Vec<usize>>> = vec![None; t];
    for v in 0..g.n() {
        let mut counts = vec![0usize; t];
        for w in g.neighbors(v) {
            counts[p.block_of(w)] += 1;
        }
        let slot = &mut reference[p.block_of(v)];
        match slot {
            None => *slot = Some(counts),
            Some(r) if *r != counts => return false,
            Some(_) => {}
        }
    }
    true
}

/// Coarsest equitable partition by iterated color refinement, with blocks
/// numbered by first appearance.
pub fn coarsest_equitable_partition(g: &Graph) -> Partition {
    let n = g.n();
    let mut colors = vec![0usize; n];
    let mut count = 1;
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![0usize; n];
        for v in 0..n {
            let mut sig: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
            sig.sort_unstable();
            let fresh = ids.len();
            next[v] = *ids.entry((colors[v], sig)).or_insert(fresh);
        }
        let new_count = ids.len();
        colors = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    Partition::new(colors).expect("refinement labels are contiguous")
}
