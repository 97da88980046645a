//! Signless Laplacian `Q = D + A`, its spectrum, quotient matrices of vertex
//! partitions and eigenvalue interlacing.

mod jacobi;
mod quotient;

pub use quotient::{
    coarsest_equitable_partition, is_equitable, quotient_matrix, Partition, QuadraticRadius,
    QuotientMatrix,
};

use std::cmp::Ordering;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("matrix order {n} exceeds the dense cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Numerical settings for the eigensolvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    /// Residual tolerance for power iteration and off-diagonal tolerance
    /// for Jacobi, both relative to `max(1, ||M||)`.
    pub tol: f64,
    pub max_iterations: usize,
    /// Largest order handed to the dense Jacobi solver.
    pub dense_cap: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            tol: 1e-12,
            max_iterations: 1_000_000,
            dense_cap: 512,
        }
    }
}

/// Dense real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Rejects ragged, non-square, non-finite or asymmetric input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let n = rows.len();
        if n == 0 {
            return Err(SpectralError::InvalidMatrix("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SpectralError::InvalidMatrix(format!(
                    "row {i} has length {}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        let m = SymMatrix { n, data };
        for i in 0..n {
            for j in 0..n {
                let x = m.get(i, j);
                if !x.is_finite() {
                    return Err(SpectralError::InvalidMatrix(format!(
                        "entry ({i},{j}) is {x}"
                    )));
                }
                if x != m.get(j, i) {
                    return Err(SpectralError::InvalidMatrix(format!(
                        "entry ({i},{j}) = {x} differs from ({j},{i}) = {}",
                        m.get(j, i)
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub(crate) fn is_integral(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.fract() == 0.0 && x.abs() < 2f64.powi(52))
    }

    fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0.0)
    }

    /// Connected components of the off-diagonal support pattern.
    fn support_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && w != u && self.get(u, w) != 0.0 {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// `Q(G) = D(G) + A(G)`.
pub fn signless_laplacian(g: &Graph) -> SymMatrix {
    let n = g.n();
    let mut data = vec![0.0; n * n];
    for v in 0..n {
        data[v * n + v] = g.degree(v) as f64;
        for w in g.neighbors(v) {
            data[v * n + w] = 1.0;
        }
    }
    SymMatrix { n, data }
}

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    let n = g.n();
    let mut data = vec![0.0; n * n];
    for (u, v) in g.edges() {
        data[u * n + v] = 1.0;
        data[v * n + u] = 1.0;
    }
    SymMatrix { n, data }
}

/// Eigenvalues in non-increasing order, with the radius and, for
/// nonnegative matrices, a nonnegative unit eigenvector for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub radius: f64,
    pub perron_vector: Option<Vec<f64>>,
    pub tol: f64,
}

pub(crate) fn sort_desc(v: &mut [f64]) {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
}

/// Largest eigenvalue and a unit eigenvector for it, by power iteration.
///
/// Runs separately on each connected component of the off-diagonal support
/// and keeps the largest. Each run starts from `1 + 1e-6 * i` (normalized)
/// and stops once `||Mx - rho x|| <= tol * max(1, ||M||_inf)`. A Gershgorin
/// shift is applied when a component could have negative eigenvalues, so
/// the dominant eigenvalue is always the largest one.
pub fn spectral_radius(
    m: &SymMatrix,
    cfg: &SpectralConfig,
) -> Result<(f64, Vec<f64>), SpectralError> {
    if !(cfg.tol > 0.0) {
        return Err(SpectralError::InvalidInput(format!(
            "tolerance {} must be positive",
            cfg.tol
        )));
    }
    let n = m.order();
    let scale = m.norm_inf().max(1.0);
    let mut best: Option<(f64, Vec<f64>)> = None;

    for comp in m.support_components() {
        let (rho, local) = if comp.len() == 1 {
            (m.get(comp[0], comp[0]), vec![1.0])
        } else {
            power_iterate(m, &comp, cfg, scale)?
        };
        if best.as_ref().is_none_or(|(b, _)| rho > *b) {
            let mut x = vec![0.0; n];
            for (i, &v) in comp.iter().enumerate() {
                x[v] = local[i];
            }
            best = Some((rho, x));
        }
    }
    let (rho, mut x) = best.expect("matrix has at least one vertex");
    if m.is_nonnegative() && x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|c| *c = -*c);
    }
    Ok((rho, x))
}

fn power_iterate(
    m: &SymMatrix,
    comp: &[usize],
    cfg: &SpectralConfig,
    scale: f64,
) -> Result<(f64, Vec<f64>), SpectralError> {
    let k = comp.len();
    let sub: Vec<f64> = comp
        .iter()
        .flat_map(|&u| comp.iter().map(move |&v| m.get(u, v)))
        .collect();
    let gershgorin_low = (0..k)
        .map(|i| {
            let off: f64 = (0..k)
                .filter(|&j| j != i)
                .map(|j| sub[i * k + j].abs())
                .sum();
            sub[i * k + i] - off
        })
        .fold(f64::INFINITY, f64::min);
    let shift = (-gershgorin_low).max(0.0);

    let mut x: Vec<f64> = comp.iter().map(|&v| 1.0 + 1e-6 * v as f64).collect();
    normalize(&mut x);
    let mut mx = vec![0.0; k];
    for _ in 0..cfg.max_iterations {
        for i in 0..k {
            mx[i] = (0..k).map(|j| sub[i * k + j] * x[j]).sum();
        }
        let rho: f64 = x.iter().zip(&mx).map(|(a, b)| a * b).sum();
        let resid = x
            .iter()
            .zip(&mx)
            .map(|(xi, mi)| (mi - rho * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if resid <= cfg.tol * scale {
            return Ok((rho, x));
        }
        for i in 0..k {
            x[i] = mx[i] + shift * x[i];
        }
        if normalize(&mut x) == 0.0 {
            return Ok((0.0, x));
        }
    }
    Err(SpectralError::NoConvergence {
        iterations: cfg.max_iterations,
    })
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|c| *c /= norm);
    }
    norm
}

/// Full spectrum by cyclic Jacobi rotations.
pub fn eigenvalues_all(
    m: &SymMatrix,
    cfg: &SpectralConfig,
) -> Result<SpectrumResult, SpectralError> {
    let n = m.order();
    if n > cfg.dense_cap {
        return Err(SpectralError::TooLarge {
            n,
            cap: cfg.dense_cap,
        });
    }
    let (values, vectors) = jacobi::jacobi_eigen(&m.data, n, cfg.tol, true)?;
    let top = (0..n)
        .max_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(Ordering::Equal))
        .expect("n >= 1");
    let perron_vector = if m.is_nonnegative() {
        let mut v: Vec<f64> = (0..n).map(|r| vectors[r * n + top]).collect();
        if v.iter().sum::<f64>() < 0.0 {
            v.iter_mut().for_each(|c| *c = -*c);
        }
        v.iter()
            .all(|&c| c >= -1e-9)
            .then(|| v.into_iter().map(|c| c.max(0.0)).collect())
    } else {
        None
    };
    let mut eigenvalues = values;
    sort_desc(&mut eigenvalues);
    Ok(SpectrumResult {
        radius: eigenvalues[0],
        eigenvalues,
        perron_vector,
        tol: cfg.tol,
    })
}

/// `q_1(G)`: dense Jacobi up to the dense cap, power iteration beyond it.
pub fn signless_radius(g: &Graph, cfg: &SpectralConfig) -> Result<f64, SpectralError> {
    let q = signless_laplacian(g);
    if g.n() <= cfg.dense_cap {
        Ok(eigenvalues_all(&q, cfg)?.radius)
    } else {
        Ok(spectral_radius(&q, cfg)?.0)
    }
}

/// `q_1(G)` in closed form, when every component has an equitable partition
/// with at most two blocks.
///
/// For such a component the largest eigenvalue of the (irreducible,
/// nonnegative) quotient equals the component's `q_1`, and a 2x2 quotient
/// has it as a root of a quadratic with rational coefficients.
pub fn exact_signless_radius(g: &Graph) -> Option<QuadraticRadius> {
    let mut best: Option<QuadraticRadius> = None;
    for comp in g.components() {
        let h = g
            .induced_subgraph(&comp)
            .expect("component vertices are in range");
        let p = coarsest_equitable_partition(&h);
        if p.block_count() > 2 {
            return None;
        }
        let r = quotient_matrix(&signless_laplacian(&h), &p)
            .ok()?
            .radius_quadratic()?;
        if best.is_none_or(|b| r.cmp_quadratic(&b) == Ordering::Greater) {
            best = Some(r);
        }
    }
    best
}

/// Rational `q_1(G)` when [`exact_signless_radius`] has a rational value.
pub fn exact_signless_radius_rational(g: &Graph) -> Option<Rational64> {
    exact_signless_radius(g)?.as_rational()
}

/// Result of an interlacing check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interlacing {
    pub interlaces: bool,
    pub tight: bool,
}

/// Whether `small` (length `m`) interlaces `big` (length `n > m`), both in
/// non-increasing order: `big[i] >= small[i] >= big[n-m+i]` up to `tol`.
/// Tight means some `k` in `0..=m` has `small[i] = big[i]` for `i < k` and
/// `small[i] = big[n-m+i]` for `i >= k`.
pub fn check_interlacing(
    big: &[f64],
    small: &[f64],
    tol: f64,
) -> Result<Interlacing, SpectralError> {
    let (n, m) = (big.len(), small.len());
    if m >= n {
        return Err(SpectralError::InvalidInput(format!(
            "interlacing needs fewer values in the second sequence ({m} >= {n})"
        )));
    }
    let interlaces = (0..m).all(|i| big[i] >= small[i] - tol && small[i] >= big[n - m + i] - tol);
    let head: Vec<bool> = (0..m).map(|i| (big[i] - small[i]).abs() <= tol).collect();
    let tail: Vec<bool> = (0..m)
        .map(|i| (big[n - m + i] - small[i]).abs() <= tol)
        .collect();
    let tight =
        interlaces && (0..=m).any(|k| head[..k].iter().all(|&b| b) && tail[k..].iter().all(|&b| b));
    Ok(Interlacing { interlaces, tight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, empty, path};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn signless_laplacian_entries() {
        assert_eq!(
            signless_laplacian(&path(3).unwrap()).rows(),
            vec![
                vec![1.0, 1.0, 0.0],
                vec![1.0, 2.0, 1.0],
                vec![0.0, 1.0, 1.0]
            ]
        );
        assert_eq!(
            signless_laplacian(&complete(1).unwrap()).rows(),
            vec![vec![0.0]]
        );
        let q = signless_laplacian(&cycle(4).unwrap());
        assert!((0..4).all(|i| q.get(i, i) == 2.0));
        assert_eq!(q.get(0, 1), 1.0);
        assert_eq!(q.get(0, 2), 0.0);
    }

    #[test]
    fn power_iteration_radius() {
        let cfg = SpectralConfig::default();
        let (r, x) = spectral_radius(&signless_laplacian(&cycle(4).unwrap()), &cfg).unwrap();
        assert!(close(r, 4.0, 1e-10));
        assert!(x.iter().all(|&c| c > 0.0));
        let (r, _) = spectral_radius(&signless_laplacian(&path(3).unwrap()), &cfg).unwrap();
        assert!(close(r, 3.0, 1e-10));
        let (r, _) = spectral_radius(
            &signless_laplacian(&complete_bipartite(4, 3).unwrap()),
            &cfg,
        )
        .unwrap();
        assert!(close(r, 7.0, 1e-10));
    }

    #[test]
    fn power_iteration_disconnected_and_negative() {
        let cfg = SpectralConfig::default();
        // K3 plus an isolated vertex: radius from the triangle
        let g = complete(3)
            .unwrap()
            .disjoint_union(&empty(1).unwrap())
            .unwrap();
        let (r, x) = spectral_radius(&signless_laplacian(&g), &cfg).unwrap();
        assert!(close(r, 4.0, 1e-10));
        assert_eq!(x[3], 0.0);
        // eigenvalues 1 and -3: the largest is 1, not the dominant -3
        let m = SymMatrix::from_rows(&[vec![-1.0, 2.0], vec![2.0, -1.0]]).unwrap();
        let (r, _) = spectral_radius(&m, &cfg).unwrap();
        assert!(close(r, 1.0, 1e-10));
    }

    #[test]
    fn matrix_validation() {
        assert!(matches!(
            SymMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(SpectralError::InvalidMatrix(_))
        ));
        assert!(matches!(
            SymMatrix::from_rows(&[vec![f64::NAN]]),
            Err(SpectralError::InvalidMatrix(_))
        ));
        let cfg = SpectralConfig {
            max_iterations: 1,
            ..Default::default()
        };
        let q = signless_laplacian(&path(5).unwrap());
        assert!(matches!(
            spectral_radius(&q, &cfg),
            Err(SpectralError::NoConvergence { .. })
        ));
    }

    #[test]
    fn full_spectra() {
        let cfg = SpectralConfig::default();
        let s = eigenvalues_all(&signless_laplacian(&path(3).unwrap()), &cfg).unwrap();
        for (a, b) in s.eigenvalues.iter().zip([3.0, 1.0, 0.0]) {
            assert!(close(*a, b, 1e-10));
        }
        let s = eigenvalues_all(&signless_laplacian(&complete(2).unwrap()), &cfg).unwrap();
        assert!(close(s.eigenvalues[0], 2.0, 1e-12) && close(s.eigenvalues[1], 0.0, 1e-12));
        assert!(s.perron_vector.is_some());

        // circulant: 2 + 2 cos(2 pi k / 5)
        let s = eigenvalues_all(&signless_laplacian(&cycle(5).unwrap()), &cfg).unwrap();
        let mut expect: Vec<f64> = (0..5)
            .map(|k| 2.0 + 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 5.0).cos())
            .collect();
        sort_desc(&mut expect);
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!(close(*a, b, 1e-10));
        }
        assert!(close(s.radius, 4.0, 1e-12));

        let tiny = SpectralConfig {
            dense_cap: 2,
            ..cfg
        };
        assert!(matches!(
            eigenvalues_all(&signless_laplacian(&path(3).unwrap()), &tiny),
            Err(SpectralError::TooLarge { n: 3, cap: 2 })
        ));
    }

    #[test]
    fn exact_radius_families() {
        let r = |g: &Graph| exact_signless_radius_rational(g);
        assert_eq!(
            r(&complete_bipartite(4, 3).unwrap()),
            Some(Rational64::from_integer(7))
        );
        assert_eq!(r(&cycle(5).unwrap()), Some(Rational64::from_integer(4)));
        assert_eq!(r(&path(3).unwrap()), Some(Rational64::from_integer(3)));
        // K4 u K3
        let c = complete_bipartite(4, 3).unwrap().complement();
        assert_eq!(r(&c), Some(Rational64::from_integer(6)));
        // P5 needs three blocks
        assert!(exact_signless_radius(&path(5).unwrap()).is_none());
    }

    #[test]
    fn interlacing_examples() {
        // P3 with ends / middle: quotient [[1,1],[2,2]] has spectrum {3, 0}
        let q = signless_laplacian(&path(3).unwrap());
        let cfg = SpectralConfig::default();
        let big = eigenvalues_all(&q, &cfg).unwrap().eigenvalues;
        let p = Partition::new(vec![0, 1, 0]).unwrap();
        let small = quotient_matrix(&q, &p).unwrap().eigenvalues().unwrap();
        assert!(close(small[0], 3.0, 1e-12) && close(small[1], 0.0, 1e-12));
        let il = check_interlacing(&big, &small, 1e-8).unwrap();
        assert!(il.interlaces && il.tight);

        let il = check_interlacing(&[4.0, 2.0, 2.0, 0.0], &[4.0], 1e-8).unwrap();
        assert!(il.interlaces);

        let il = check_interlacing(&[3.0, 1.0, 0.0], &[5.0, 0.0], 1e-8).unwrap();
        assert!(!il.interlaces && !il.tight);

        assert!(check_interlacing(&[1.0], &[1.0], 1e-8).is_err());
    }
}
