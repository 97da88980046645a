#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use specmatch::Graph;

/// Graph on `n` vertices with pair `(u, v)`, `u < v`, present iff the
/// corresponding bit (in lexicographic pair order) is set.
pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Graph on `n` vertices whose edge set is the binary expansion of `mask`.
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|i| mask >> i & 1 == 1).collect();
    from_bits(n, &bits)
}

pub fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| from_bits(n, &bits))
    })
}

pub fn connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    graph(min_n, max_n).prop_filter("connected", |g| g.is_connected())
}

/// `G(n, p)` sample from an external generator.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(p)).collect();
    from_bits(n, &bits)
}

/// Integer matrix power trace, independent of every eigensolver.
pub fn trace_of_power(m: &[Vec<i64>], k: u32) -> i64 {
    let n = m.len();
    let mut acc: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for _ in 0..k {
        acc = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| acc[i][l] * m[l][j]).sum())
                    .collect()
            })
            .collect();
    }
    (0..n).map(|i| acc[i][i]).sum()
}

/// `D + A` as integers, built from degrees and adjacency directly.
pub fn integer_signless_laplacian(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        g.degree(i) as i64
                    } else {
                        g.has_edge(i, j) as i64
                    }
                })
                .collect()
        })
        .collect()
}
