use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{
    rat_to_f64, BMembership, CheckConfig, ConditionStatus, EqualityCase, Facts, Radius, Status,
    TheoremError, TheoremId, TheoremReport, Witnesses,
};
use crate::graph::Graph;
use crate::matching::HalfInt;
use crate::spectral::{quotient_matrix, signless_laplacian, Partition};

/// Which subgraph of `G` to compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deletion {
    None,
    Edge(usize, usize),
    Vertex(usize),
}

impl fmt::Display for Deletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deletion::None => f.write_str("none"),
            Deletion::Edge(u, v) => write!(f, "edge {u}-{v}"),
            Deletion::Vertex(v) => write!(f, "vertex {v}"),
        }
    }
}

/// `{0, 1/2, 1, ..., n - 1/2}`.
pub fn k_sweep(n: usize) -> Vec<Rational64> {
    (0..2 * n as i64).map(|h| Rational64::new(h, 2)).collect()
}

fn attach_deficiency(f: &Facts<'_>, w: &mut Witnesses) {
    if let Some(d) = f.deficiency() {
        w.s = Some(d.s.clone());
        w.t = Some(d.t.clone());
    }
}

/// `2 delta <= 2 avg <= q1 <= 2 Delta`, and both outer equalities hold
/// exactly when the graph is regular.
pub fn check_lemma_degree_bounds(
    g: &Graph,
    cfg: &CheckConfig,
) -> Result<TheoremReport, TheoremError> {
    degree_bounds(&Facts::new(g, cfg)?)
}

fn degree_bounds(f: &Facts<'_>) -> Result<TheoremReport, TheoremError> {
    let eps = f.cfg.epsilon;
    let two_avg = f.stats.avg * 2;
    let two_min = Rational64::from_integer(2 * f.stats.min as i64);
    let two_max = Rational64::from_integer(2 * f.stats.max as i64);
    let s_avg = rat_to_f64(two_avg - two_min);
    let s_lower = -f.q1.below(two_avg);
    let s_upper = f.q1.below(two_max);
    let regular = f.stats.is_regular();
    let equalities = s_lower.abs() <= eps && s_upper.abs() <= eps;
    let iff = equalities == regular;

    let margin = s_avg.min(s_lower).min(s_upper);
    let conclusion = if iff {
        ConditionStatus::from_margin(margin, eps)
    } else {
        ConditionStatus::boolean(false)
    };
    let mut w = f.witnesses();
    w.regular = Some(regular);
    w.regularity_iff = Some(iff);
    let mut flags = Vec::new();
    if !iff {
        flags.push("regularity equivalence fails".to_string());
    }
    Ok(f.report(
        TheoremId::DegreeBounds,
        ConditionStatus::boolean(true),
        conclusion,
        w,
        flags,
    ))
}

/// `q1(H) <= q1(G)` where `H` is `G` with one edge or vertex removed.
pub fn check_subgraph_monotonicity(
    g: &Graph,
    deletion: Deletion,
    cfg: &CheckConfig,
) -> Result<TheoremReport, TheoremError> {
    monotonicity(&Facts::new(g, cfg)?, deletion)
}

fn monotonicity(f: &Facts<'_>, deletion: Deletion) -> Result<TheoremReport, TheoremError> {
    if !f.connected {
        return Err(TheoremError::HypothesisUnmet(
            "graph is disconnected".into(),
        ));
    }
    let h = match deletion {
        Deletion::None => f.g.clone(),
        Deletion::Edge(u, v) => {
            if u >= f.n() || v >= f.n() || !f.g.has_edge(u, v) {
                return Err(TheoremError::InvalidParameter(format!(
                    "({u},{v}) is not an edge"
                )));
            }
            f.g.delete_edge(u, v)?
        }
        Deletion::Vertex(v) => {
            if v >= f.n() {
                return Err(TheoremError::InvalidParameter(format!(
                    "vertex {v} out of range"
                )));
            }
            if f.n() == 1 {
                return Err(TheoremError::InvalidParameter(
                    "deleting the only vertex leaves an empty graph".into(),
                ));
            }
            f.g.delete_vertex(v)?
        }
    };
    let qh = Radius::of(&h, &f.cfg.spectral)?;
    let margin = match (f.q1.exact, qh.exact) {
        (Some(a), Some(b)) if a.cmp_quadratic(&b).is_eq() => 0.0,
        (Some(a), Some(b)) => match (a.as_rational(), b.as_rational()) {
            (Some(x), Some(y)) => rat_to_f64(x - y),
            _ => f.q1.approx - qh.approx,
        },
        _ => f.q1.approx - qh.approx,
    };
    let mut w = f.witnesses();
    w.q1_subgraph = Some(qh.approx);
    w.deletion = Some(deletion.to_string());
    Ok(f.report(
        TheoremId::SubgraphMonotonicity,
        ConditionStatus::boolean(true),
        ConditionStatus::from_margin(margin, f.cfg.epsilon),
        w,
        Vec::new(),
    ))
}

/// Recognizes connected bipartite graphs whose larger part `X` has every
/// degree equal to `delta(G)`, whose other part `Y` is regular, and with
/// `|X| = |Y| + k`, `k >= 1`. The closed forms `alpha'_* = (n - k)/2` and
/// `q1 = 2 n delta / (n - k)` are cross-checked against the matching and
/// spectral modules.
pub fn verify_b_member(g: &Graph, cfg: &CheckConfig) -> Result<Option<BMembership>, TheoremError> {
    b_member_from_facts(&Facts::new(g, cfg)?)
}

pub(crate) fn b_member_from_facts(f: &Facts<'_>) -> Result<Option<BMembership>, TheoremError> {
    let g = f.g;
    if !f.connected {
        return Ok(None);
    }
    let Some((a, b)) = g.bipartition() else {
        return Ok(None);
    };
    let (x, y) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if x.len() == y.len() || y.is_empty() {
        return Ok(None);
    }
    let delta = f.delta();
    if x.iter().any(|v| g.degree(v) != delta) {
        return Ok(None);
    }
    let d_y = g.degree(y.as_slice()[0]);
    if y.iter().any(|v| g.degree(v) != d_y) {
        return Ok(None);
    }
    let n = g.n();
    let k = x.len() - y.len();
    let alpha_star_formula = HalfInt::from_halves((n - k) as u64);
    let q1_formula = Rational64::new(2 * (n * delta) as i64, (n - k) as i64);

    let p = Partition::from_blocks(&[x.clone(), y.clone()], n)?;
    let quotient = quotient_matrix(&signless_laplacian(g), &p)?
        .radius_quadratic()
        .ok_or_else(|| TheoremError::InvalidParameter("quotient has no closed form".into()))?;
    let q1_formula_value = rat_to_f64(q1_formula);
    let formulas_agree = f.alpha == alpha_star_formula
        && quotient.cmp_rational(q1_formula).is_eq()
        && (f.q1.approx - q1_formula_value).abs() <= f.cfg.epsilon;

    Ok(Some(BMembership {
        delta,
        k,
        d_y,
        x,
        y,
        alpha_star_formula,
        alpha_star: f.alpha,
        q1_formula: q1_formula.to_string(),
        q1_formula_value,
        q1: f.q1.approx,
        q1_quotient: quotient.to_string(),
        formulas_agree,
    }))
}

/// `q1 < 2 n delta / (n - k)` implies `alpha'_* > (n - k)/2`, for real
/// `k` in `[0, n)`.
pub fn check_theorem_fm_lower(
    g: &Graph,
    k: Rational64,
    cfg: &CheckConfig,
) -> Result<TheoremReport, TheoremError> {
    fm_lower(&Facts::new(g, cfg)?, k)
}

fn fm_lower(f: &Facts<'_>, k: Rational64) -> Result<TheoremReport, TheoremError> {
    f.require_connected()?;
    let n = Rational64::from_integer(f.n() as i64);
    if k < Rational64::from_integer(0) || k >= n {
        return Err(TheoremError::InvalidParameter(format!(
            "k = {k} is outside [0, {n})"
        )));
    }
    let threshold = n * 2 * f.delta() as i64 / (n - k);
    let hypothesis = ConditionStatus::from_margin(f.q1.below(threshold), f.cfg.epsilon);
    let alpha = Rational64::new(f.alpha.halves() as i64, 2);
    let conclusion = ConditionStatus::from_margin(rat_to_f64(alpha - (n - k) / 2), f.cfg.epsilon);

    let mut w = f.witnesses();
    w.alpha_star = Some(f.alpha);
    w.k = Some(k.to_string());
    w.threshold = Some(rat_to_f64(threshold));
    w.threshold_exact = Some(threshold.to_string());
    if !conclusion.holds() {
        attach_deficiency(f, &mut w);
    }
    Ok(f.report(TheoremId::FmLower, hypothesis, conclusion, w, Vec::new()))
}

/// `alpha'_* >= n delta / q1`. On equality the graph must be a bi-degree
/// bipartite member with integer `k* = n - 2 n delta / q1`; regular graphs
/// with a fractional perfect matching (where `k* = 0`) are flagged instead.
pub fn bound_ratio(g: &Graph, cfg: &CheckConfig) -> Result<TheoremReport, TheoremError> {
    ratio(&Facts::new(g, cfg)?)
}

fn ratio(f: &Facts<'_>) -> Result<TheoremReport, TheoremError> {
    f.require_connected()?;
    let eps = f.cfg.epsilon;
    let n = f.n() as i64;
    let nd = Rational64::from_integer(n * f.delta() as i64);
    let alpha = Rational64::new(f.alpha.halves() as i64, 2);
    let (bound, margin, k_star) = match f.q1.rational() {
        Some(q) => {
            let bound = nd / q;
            let k_star = Rational64::from_integer(n) - nd * 2 / q;
            (
                rat_to_f64(bound),
                rat_to_f64(alpha - bound),
                rat_to_f64(k_star),
            )
        }
        None => {
            let bound = rat_to_f64(nd) / f.q1.approx;
            (bound, f.alpha.to_f64() - bound, n as f64 - 2.0 * bound)
        }
    };

    let mut w = f.witnesses();
    w.alpha_star = Some(f.alpha);
    w.fpm = Some(f.has_fpm());
    w.bound = Some(bound);
    w.k_star = Some(k_star);
    let mut flags = Vec::new();
    let mut conclusion = ConditionStatus::from_margin(margin, eps);

    if conclusion.status == Status::Boundary {
        let member = f.b_member()?.cloned();
        let integral = (k_star - k_star.round()).abs() <= eps;
        let case = match &member {
            Some(m) if integral && (k_star - m.k as f64).abs() <= eps => {
                EqualityCase::BMember { k: m.k }
            }
            _ if f.stats.is_regular() && f.has_fpm() && k_star.abs() <= eps => {
                flags.push(
                    "regular graph with a fractional perfect matching attains equality \
                     with k* = 0, outside the positive-k family; needs review"
                        .to_string(),
                );
                EqualityCase::RegularFpm
            }
            _ => {
                flags.push("equality not explained by a bi-degree bipartite member".to_string());
                conclusion = ConditionStatus::boolean(false);
                EqualityCase::Uncharacterized
            }
        };
        w.equality = Some(case);
        w.b_member = member;
    }
    Ok(f.report(
        TheoremId::BoundRatio,
        ConditionStatus::boolean(true),
        conclusion,
        w,
        flags,
    ))
}

/// `q1 < 2 n delta / (n - 1)` implies a fractional perfect matching.
pub fn check_fpm_q1(g: &Graph, cfg: &CheckConfig) -> Result<TheoremReport, TheoremError> {
    fpm_q1(&Facts::new(g, cfg)?)
}

fn fpm_q1(f: &Facts<'_>) -> Result<TheoremReport, TheoremError> {
    f.require_connected()?;
    let n = f.n() as i64;
    let threshold = Rational64::new(2 * n * f.delta() as i64, n - 1);
    let hypothesis = ConditionStatus::from_margin(f.q1.below(threshold), f.cfg.epsilon);
    let mut w = f.witnesses();
    w.alpha_star = Some(f.alpha);
    w.fpm = Some(f.has_fpm());
    w.threshold = Some(rat_to_f64(threshold));
    w.threshold_exact = Some(threshold.to_string());
    if !f.has_fpm() {
        attach_deficiency(f, &mut w);
    }
    Ok(f.report(
        TheoremId::FpmQ1,
        hypothesis,
        ConditionStatus::boolean(f.has_fpm()),
        w,
        Vec::new(),
    ))
}

fn complement_witnesses(f: &Facts<'_>, c: &Radius, threshold: Rational64) -> Witnesses {
    let mut w = f.witnesses();
    w.q1_complement = Some(c.approx);
    w.q1_complement_exact = c.exact_string();
    w.alpha_star = Some(f.alpha);
    w.fpm = Some(f.has_fpm());
    w.threshold = Some(rat_to_f64(threshold));
    w.threshold_exact = Some(threshold.to_string());
    if !f.has_fpm() {
        attach_deficiency(f, &mut w);
    }
    w
}

/// `q1(complement) < 2 delta` implies a fractional perfect matching.
pub fn check_fpm_complement(g: &Graph, cfg: &CheckConfig) -> Result<TheoremReport, TheoremError> {
    fpm_complement(&Facts::new(g, cfg)?)
}

fn fpm_complement(f: &Facts<'_>) -> Result<TheoremReport, TheoremError> {
    f.require_connected()?;
    let c = f.complement_q1()?;
    let threshold = Rational64::from_integer(2 * f.delta() as i64);
    let hypothesis = ConditionStatus::from_margin(c.below(threshold), f.cfg.epsilon);
    let w = complement_witnesses(f, &c, threshold);
    Ok(f.report(
        TheoremId::FpmComplement,
        hypothesis,
        ConditionStatus::boolean(f.has_fpm()),
        w,
        Vec::new(),
    ))
}

/// `delta` when `G` is `(delta + 1) K_1` joined with some graph of order
/// `delta`: `n = 2 delta + 1` and some independent set of size `delta + 1`
/// is completely joined to the remaining vertices.
pub fn is_exception_graph(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let delta = (n - 1) / 2;
    if g.degree_stats().min != delta {
        return None;
    }
    // every member of I has neighborhood V \ I, so I = V \ N(v) for any v in I
    for v in (0..n).filter(|&v| g.degree(v) == delta) {
        let outside: Vec<bool> = (0..n).map(|u| !g.has_edge(v, u)).collect();
        let ok = (0..n)
            .filter(|&u| outside[u])
            .all(|u| g.degree(u) == delta && g.neighbors(u).all(|x| !outside[x]));
        if ok {
            return Some(delta);
        }
    }
    None
}

/// `q1(complement) < 2 delta + 2` implies a fractional perfect matching
/// unless `G` is an exception graph.
pub fn check_fpm_complement_refined(
    g: &Graph,
    cfg: &CheckConfig,
) -> Result<TheoremReport, TheoremError> {
    fpm_complement_refined(&Facts::new(g, cfg)?)
}

fn fpm_complement_refined(f: &Facts<'_>) -> Result<TheoremReport, TheoremError> {
    f.require_connected()?;
    let c = f.complement_q1()?;
    let threshold = Rational64::from_integer(2 * f.delta() as i64 + 2);
    let hypothesis = ConditionStatus::from_margin(c.below(threshold), f.cfg.epsilon);
    let exception = is_exception_graph(f.g);
    let mut w = complement_witnesses(f, &c, threshold);
    w.exception_delta = exception;
    Ok(f.report(
        TheoremId::FpmComplementRefined,
        hypothesis,
        ConditionStatus::boolean(f.has_fpm() || exception.is_some()),
        w,
        Vec::new(),
    ))
}

/// Every checker on one graph. Checkers whose preconditions fail are
/// skipped; `ks` feeds the `k`-parametrized checker and `deletions` the
/// subgraph checker.
pub(crate) fn run_all(
    f: &Facts<'_>,
    ks: &[Rational64],
    deletions: &[Deletion],
) -> Result<Vec<TheoremReport>, TheoremError> {
    let mut out = vec![degree_bounds(f)?];
    if !f.connected {
        return Ok(out);
    }
    for &d in deletions {
        out.push(monotonicity(f, d)?);
    }
    if f.n() < 3 {
        return Ok(out);
    }
    for &k in ks {
        out.push(fm_lower(f, k)?);
    }
    out.push(ratio(f)?);
    out.push(fpm_q1(f)?);
    out.push(fpm_complement(f)?);
    out.push(fpm_complement_refined(f)?);
    Ok(out)
}

/// Every checker on `g`, with the subgraph checker run on the first edge
/// and on vertex 0.
pub fn check_all(
    g: &Graph,
    ks: &[Rational64],
    cfg: &CheckConfig,
) -> Result<Vec<TheoremReport>, TheoremError> {
    let f = Facts::new(g, cfg)?;
    let mut deletions = Vec::new();
    if let Some((u, v)) = g.edges().next() {
        deletions.push(Deletion::Edge(u, v));
    }
    if g.n() > 1 {
        deletions.push(Deletion::Vertex(0));
    }
    run_all(&f, ks, &deletions)
}
