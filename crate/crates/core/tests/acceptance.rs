//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line
//! with its runtime; the test fails if any criterion fails or overruns its
//! time budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{from_mask, random_graph};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specmatch::graph::{attached_clique, complete_bipartite, construct_b_member, BFamilySpec};
use specmatch::matching::{
    brute_force_deficiency, extract_fractional_matching, fractional_matching_number,
    has_fractional_perfect_matching, verify_fractional_matching, HalfInt,
};
use specmatch::spectral::{
    check_interlacing, coarsest_equitable_partition, eigenvalues_all,
    exact_signless_radius_rational, is_equitable, quotient_matrix, signless_laplacian, Partition,
    SpectralConfig,
};
use specmatch::theorems::{
    bound_ratio, check_fpm_complement, check_fpm_q1, check_lemma_degree_bounds, hunt,
    verify_b_member, CheckConfig, EqualityCase, HuntConfig, Status, Verdict,
};
use specmatch::Graph;

const TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q1(g: &Graph) -> f64 {
    eigenvalues_all(&signless_laplacian(g), &SpectralConfig::default())
        .unwrap()
        .radius
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u64 << (n * (n - 1) / 2)).map(move |mask| from_mask(n, mask))
}

/// Fractional matching number equals `(n - max deficiency)/2` on every
/// labeled graph with at most 6 vertices and on every component of each.
fn c1_deficiency_formula() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=6 {
        for g in all_graphs(n) {
            let mut pieces = vec![g.clone()];
            let comps = g.components();
            if comps.len() > 1 {
                pieces.extend(comps.iter().map(|c| g.induced_subgraph(c).unwrap()));
            }
            for h in pieces {
                let d = brute_force_deficiency(&h, 24).unwrap().deficiency;
                let formula = HalfInt::from_halves((h.n() - d) as u64);
                let fast = fractional_matching_number(&h);
                ensure(fast == formula, || {
                    format!("{h:?}: fast {fast}, formula {formula}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} graphs agree exactly"))
}

/// Closed forms on complete bipartite and constructed bi-degree members.
fn c2_b_family_closed_forms() -> Outcome {
    let mut graphs: Vec<(usize, usize, Graph)> = [(1, 1), (2, 1), (3, 1), (3, 2), (4, 3)]
        .into_iter()
        .map(|(d, k)| (d, k, complete_bipartite(d + k, d).unwrap()))
        .collect();
    let spec = BFamilySpec::from_parts(2, 2, 4).unwrap();
    graphs.push((2, 2, construct_b_member(&spec).map_err(|e| e.to_string())?));
    let cfg = CheckConfig::default();
    for (delta, k, g) in &graphs {
        let n = g.n();
        let alpha = fractional_matching_number(g);
        ensure(alpha == HalfInt::from_halves((n - k) as u64), || {
            format!("delta {delta}, k {k}: alpha'_* = {alpha}")
        })?;
        let formula = Rational64::new((2 * n * delta) as i64, (n - k) as i64);
        let fvalue = *formula.numer() as f64 / *formula.denom() as f64;
        ensure((q1(g) - fvalue).abs() <= TOL, || {
            format!("delta {delta}, k {k}: q1 {}", q1(g))
        })?;
        ensure(exact_signless_radius_rational(g) == Some(formula), || {
            format!("delta {delta}, k {k}: exact radius differs from {formula}")
        })?;
        let m = verify_b_member(g, &cfg)
            .unwrap()
            .ok_or("member not recognized")?;
        ensure((m.delta, m.k) == (*delta, *k) && m.formulas_agree, || {
            format!("{m:?}")
        })?;
    }
    Ok(format!("{} members match both closed forms", graphs.len()))
}

/// `alpha'_* >= n delta / q1` on every connected labeled graph with
/// `3 <= n <= 6`, with every equality case accounted for.
fn c3_bound_ratio() -> Outcome {
    let cfg = CheckConfig::default();
    let (mut checked, mut members, mut regular) = (0usize, 0usize, 0usize);
    for n in 3..=6 {
        for g in all_graphs(n).filter(Graph::is_connected) {
            let r = bound_ratio(&g, &cfg).unwrap();
            let margin = r.conclusion.margin;
            ensure(r.verdict != Verdict::Violation, || {
                format!("violation on {}", r.graph6)
            })?;
            let bound = r.witnesses.bound.unwrap();
            ensure(
                r.witnesses.alpha_star.unwrap().to_f64() >= bound - TOL,
                || format!("{}: margin {margin:?}", r.graph6),
            )?;
            match &r.witnesses.equality {
                None => {}
                Some(EqualityCase::BMember { k }) => {
                    let m = r.witnesses.b_member.as_ref().ok_or("member missing")?;
                    let ks = r.witnesses.k_star.unwrap();
                    ensure(m.k == *k && (ks - *k as f64).abs() <= TOL, || {
                        format!("{}: k* {ks} vs member k {}", r.graph6, m.k)
                    })?;
                    members += 1;
                }
                Some(EqualityCase::RegularFpm) => {
                    ensure(!r.flags.is_empty(), || format!("{}: unflagged", r.graph6))?;
                    regular += 1;
                }
                Some(EqualityCase::Uncharacterized) => {
                    return Err(format!("uncharacterized equality on {}", r.graph6));
                }
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} connected graphs; equality on {members} members and {regular} flagged regular graphs"
    ))
}

/// Seeded random hunts over every checker.
fn c4_hunts() -> Outcome {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut total = 0;
    let mut non_vacuous = 0;
    for (p, seed) in [(0.5, 1u64), (0.8, 2)] {
        let cfg = HuntConfig {
            n_min: 4,
            n_max: 12,
            p,
            min_degree: 0,
            count: 5000,
            seed,
            jobs,
            max_attempts: None,
        };
        let rep = hunt(&cfg, &CheckConfig::default()).map_err(|e| e.to_string())?;
        ensure(rep.accepted == 5000, || {
            format!("only {} graphs accepted", rep.accepted)
        })?;
        ensure(rep.violations.is_empty(), || {
            format!(
                "{} violations, first {}",
                rep.violations.len(),
                rep.violations[0].graph6
            )
        })?;
        total += rep.accepted;
        non_vacuous += rep.reports - rep.verdicts.get(&Verdict::Vacuous).copied().unwrap_or(0);
    }
    Ok(format!(
        "{total} graphs, {non_vacuous} non-vacuous reports, 0 violations"
    ))
}

/// The attached-clique graphs: the degree-based sufficient condition does
/// not apply but the complement-based one does.
fn c5_attached_clique() -> Outcome {
    let cfg = CheckConfig::default();
    for t in 2..=5usize {
        let g = attached_clique(t).map_err(|e| e.to_string())?;
        let lower = (8 * t * t) as f64 / (2 * t + 1) as f64;
        let q = q1(&g);
        ensure(q >= lower - TOL, || format!("t {t}: q1 {q} < {lower}"))?;
        let r = check_fpm_q1(&g, &cfg).unwrap();
        ensure(r.hypothesis.status == Status::Fails, || {
            format!("t {t}: {:?}", r.hypothesis)
        })?;
        let qc = q1(&g.complement());
        ensure((qc - (t + 1) as f64).abs() <= TOL, || {
            format!("t {t}: q1(complement) {qc}")
        })?;
        let r = check_fpm_complement(&g, &cfg).unwrap();
        ensure(r.hypothesis.status == Status::Holds, || {
            format!("t {t}: {:?}", r.hypothesis)
        })?;
        ensure(has_fractional_perfect_matching(&g), || {
            format!("t {t}: no fractional perfect matching")
        })?;
    }
    Ok("t = 2..5 as expected".into())
}

/// `K_{delta+1, delta}` sits on the complement threshold without a
/// fractional perfect matching.
fn c6_complement_tightness() -> Outcome {
    let cfg = CheckConfig::default();
    for delta in 1..=8usize {
        let g = complete_bipartite(delta + 1, delta).unwrap();
        let qc = q1(&g.complement());
        ensure((qc - (2 * delta) as f64).abs() <= TOL, || {
            format!("delta {delta}: {qc}")
        })?;
        let r = check_fpm_complement(&g, &cfg).unwrap();
        ensure(r.hypothesis.status == Status::Boundary, || {
            format!("delta {delta}: {:?}", r.hypothesis)
        })?;
        let alpha = fractional_matching_number(&g);
        ensure(
            alpha == HalfInt::from_integer(delta as u64) && alpha.halves() < g.n() as u64,
            || format!("delta {delta}: alpha'_* {alpha}"),
        )?;
    }
    Ok("delta = 1..8 on the boundary".into())
}

/// Quotient spectra interlace; equitable quotients keep `q1`.
fn c7_interlacing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = SpectralConfig::default();
    let mut equitable = 0;
    for i in 0..1000 {
        let n = rng.gen_range(2..=16);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        let t = rng.gen_range(1..n);
        let mut labels: Vec<usize> = (0..t).chain((t..n).map(|_| rng.gen_range(0..t))).collect();
        labels.shuffle(&mut rng);
        let q = signless_laplacian(&g);
        let big = eigenvalues_all(&q, &cfg).unwrap().eigenvalues;
        let mut partitions = vec![Partition::new(labels).unwrap()];
        if g.is_connected() {
            partitions.push(coarsest_equitable_partition(&g));
        }
        for p in partitions {
            let small = quotient_matrix(&q, &p).unwrap().eigenvalues().unwrap();
            if p.block_count() < n {
                let il = check_interlacing(&big, &small, TOL).unwrap();
                ensure(il.interlaces, || format!("pair {i}: {small:?} vs {big:?}"))?;
            }
            if g.is_connected() && is_equitable(&g, &p) {
                ensure((small[0] - big[0]).abs() <= TOL, || {
                    format!("pair {i}: {} vs {}", small[0], big[0])
                })?;
                equitable += 1;
            }
        }
    }
    Ok(format!(
        "1000 pairs interlace; {equitable} equitable quotients keep q1"
    ))
}

/// Random circulant graph: regular of the degree given by its jump set.
fn circulant<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let jumps: Vec<usize> = (1..=n / 2).filter(|_| rng.gen_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for &j in &jumps {
            let v = (u + j) % n;
            if u < v {
                edges.push((u, v));
            } else if v < u && !edges.contains(&(v, u)) {
                edges.push((v, u));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edge_list(n, &edges).unwrap()
}

/// `2 delta <= 2 avg <= q1 <= 2 Delta` with equalities iff regular.
fn c8_degree_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = CheckConfig::default();
    let (mut regular, mut irregular) = (0, 0);
    for i in 0..1000 {
        let n = rng.gen_range(1..=16);
        let g = if i % 4 == 0 {
            circulant(&mut rng, n)
        } else {
            let p = rng.gen_range(0.1..0.9);
            random_graph(&mut rng, n, p)
        };
        let s = g.degree_stats();
        let avg = *s.avg.numer() as f64 / *s.avg.denom() as f64;
        let q = q1(&g);
        let (lo, hi) = (2.0 * s.min as f64, 2.0 * s.max as f64);
        ensure(
            lo <= 2.0 * avg + TOL && 2.0 * avg <= q + TOL && q <= hi + TOL,
            || format!("graph {i}: {lo} {} {q} {hi}", 2.0 * avg),
        )?;
        let equalities = (q - 2.0 * avg).abs() <= TOL && (hi - q).abs() <= TOL;
        ensure(equalities == s.is_regular(), || {
            format!("graph {i}: regularity equivalence")
        })?;
        let r = check_lemma_degree_bounds(&g, &cfg).unwrap();
        ensure(
            r.verdict != Verdict::Violation && r.witnesses.regularity_iff == Some(true),
            || format!("graph {i}: report {:?}", r.verdict),
        )?;
        if s.is_regular() {
            regular += 1;
        } else {
            irregular += 1;
        }
    }
    Ok(format!(
        "{regular} regular and {irregular} irregular graphs"
    ))
}

/// Extracted fractional matchings are feasible, half-integral, optimal.
fn c9_half_integral_witness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..1000 {
        let n = rng.gen_range(1..=40);
        let p = rng.gen_range(0.02..0.6);
        let g = random_graph(&mut rng, n, p);
        let f = extract_fractional_matching(&g);
        ensure(f.edges.iter().all(|e| e.numerator <= 2), || {
            format!("graph {i}: weight above 1")
        })?;
        let (feasible, total) = verify_fractional_matching(&g, &f).map_err(|e| e.to_string())?;
        let alpha = fractional_matching_number(&g);
        ensure(feasible && total == alpha, || {
            format!("graph {i}: feasible {feasible}, {total} vs {alpha}")
        })?;
    }
    Ok("1000 witnesses feasible and optimal".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (
            "1 deficiency formula on all small graphs",
            c1_deficiency_formula,
            60,
        ),
        (
            "2 bi-degree family closed forms",
            c2_b_family_closed_forms,
            10,
        ),
        ("3 ratio bound and its equality cases", c3_bound_ratio, 120),
        ("4 random hunts", c4_hunts, 120),
        ("5 attached-clique graphs", c5_attached_clique, 10),
        (
            "6 complement threshold tightness",
            c6_complement_tightness,
            10,
        ),
        ("7 quotient interlacing", c7_interlacing, 60),
        ("8 degree bounds on q1", c8_degree_bounds, 30),
        ("9 half-integral witnesses", c9_half_integral_witness, 30),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(budget) => {
                Err(format!("took {elapsed:.1?}, budget {budget} s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} ({elapsed:.2?})"),
            Err(detail) => {
                println!("FAIL  criterion {name}: {detail} ({elapsed:.2?})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
