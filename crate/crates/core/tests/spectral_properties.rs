mod common;

use common::{connected_graph, graph, integer_signless_laplacian, trace_of_power};
use proptest::prelude::*;
use specmatch::spectral::{
    check_interlacing, coarsest_equitable_partition, eigenvalues_all, exact_signless_radius,
    is_equitable, quotient_matrix, signless_laplacian, spectral_radius, Partition, SpectralConfig,
};

fn cfg() -> SpectralConfig {
    SpectralConfig::default()
}

/// Random labels in `0..t`, compressed so that every block is used.
fn compress(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

proptest! {
    #[test]
    fn spectrum_is_psd_and_matches_power_traces(g in graph(1, 12)) {
        let spec = eigenvalues_all(&signless_laplacian(&g), &cfg()).unwrap();
        let eig = &spec.eigenvalues;
        prop_assert!(eig.iter().all(|&l| l >= -1e-9));
        prop_assert!(eig.windows(2).all(|w| w[0] >= w[1]));
        let q = integer_signless_laplacian(&g);
        for k in 1..=4u32 {
            let exact = trace_of_power(&q, k) as f64;
            let sum: f64 = eig.iter().map(|l| l.powi(k as i32)).sum();
            prop_assert!((sum - exact).abs() <= 1e-8 * exact.max(1.0), "k = {}: {} vs {}", k, sum, exact);
        }
        prop_assert!((eig.iter().sum::<f64>() - 2.0 * g.m() as f64).abs() <= 1e-8);
    }

    #[test]
    fn power_iteration_agrees_with_jacobi(g in graph(1, 16)) {
        let q = signless_laplacian(&g);
        let jac = eigenvalues_all(&q, &cfg()).unwrap().radius;
        let (pow, vec) = spectral_radius(&q, &cfg()).unwrap();
        prop_assert!((jac - pow).abs() <= 1e-9, "{} vs {}", jac, pow);
        let norm: f64 = vec.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn quotient_spectrum_interlaces(g in graph(2, 12), labels in prop::collection::vec(0usize..5, 12)) {
        let n = g.n();
        let assignment = compress(&labels[..n]);
        let p = Partition::new(assignment).unwrap();
        prop_assume!(p.block_count() < n);
        let q = signless_laplacian(&g);
        let big = eigenvalues_all(&q, &cfg()).unwrap().eigenvalues;
        let small = quotient_matrix(&q, &p).unwrap().eigenvalues().unwrap();
        prop_assert!(check_interlacing(&big, &small, 1e-8).unwrap().interlaces);
    }

    #[test]
    fn equitable_quotients_keep_the_radius(g in connected_graph(2, 14)) {
        let p = coarsest_equitable_partition(&g);
        prop_assert!(is_equitable(&g, &p));
        let q = signless_laplacian(&g);
        let q1 = eigenvalues_all(&q, &cfg()).unwrap().radius;
        let lambda = quotient_matrix(&q, &p).unwrap().eigenvalues().unwrap()[0];
        prop_assert!((lambda - q1).abs() <= 1e-8, "{} vs {}", lambda, q1);
        if let Some(exact) = exact_signless_radius(&g) {
            prop_assert!((exact.to_f64() - q1).abs() <= 1e-9);
        }
    }

    #[test]
    fn subgraphs_do_not_increase_the_radius(g in connected_graph(2, 12), pick in any::<usize>()) {
        let q1 = eigenvalues_all(&signless_laplacian(&g), &cfg()).unwrap().radius;
        let (u, v) = g.edges().nth(pick % g.m()).unwrap();
        for h in [g.delete_edge(u, v).unwrap(), g.delete_vertex(pick % g.n()).unwrap()] {
            let qh = eigenvalues_all(&signless_laplacian(&h), &cfg()).unwrap().radius;
            prop_assert!(qh <= q1 + 1e-9);
        }
    }
}
