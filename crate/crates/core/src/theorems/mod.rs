//! Checkers for the inequalities relating `q_1` and `alpha'_*`, recognizers
//! for the graphs on which they are tight, and a seeded random hunter.
//!
//! Every checker returns a [`TheoremReport`] with a tri-state hypothesis and
//! conclusion. Strict inequalities are compared with an `epsilon` margin,
//! and where a closed form for `q_1` is available the comparison is made in
//! exact arithmetic instead.

mod checks;
mod hunt;
mod report;

pub use checks::{
    bound_ratio, check_all, check_fpm_complement, check_fpm_complement_refined, check_fpm_q1,
    check_lemma_degree_bounds, check_subgraph_monotonicity, check_theorem_fm_lower,
    is_exception_graph, k_sweep, verify_b_member, Deletion,
};
pub use hunt::{hunt, HuntConfig, HuntReport};
pub use report::{
    BMembership, ConditionStatus, EqualityCase, Status, TheoremId, TheoremReport, Verdict,
    Witnesses,
};

use std::cell::OnceCell;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{to_graph6, DegreeStats, Graph, GraphError};
use crate::matching::{
    brute_force_deficiency, fractional_matching_number, DeficiencyWitness, HalfInt, MatchingError,
    DEFAULT_BRUTE_CAP,
};
use crate::spectral::{
    exact_signless_radius, signless_radius, QuadraticRadius, SpectralConfig, SpectralError,
};

/// Settings shared by every checker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Width of the boundary band around every threshold.
    pub epsilon: f64,
    /// Largest order for which brute-force deficiency witnesses are produced.
    pub brute_cap: usize,
    pub spectral: SpectralConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            epsilon: 1e-8,
            brute_cap: DEFAULT_BRUTE_CAP,
            spectral: SpectralConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoremError {
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn rat_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `q_1` of some graph: the eigensolver value, plus the closed form when the
/// graph has small equitable partitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Radius {
    pub approx: f64,
    pub exact: Option<QuadraticRadius>,
}

impl Radius {
    pub fn of(g: &Graph, cfg: &SpectralConfig) -> Result<Self, SpectralError> {
        Ok(Radius {
            approx: signless_radius(g, cfg)?,
            exact: exact_signless_radius(g),
        })
    }

    pub fn rational(&self) -> Option<Rational64> {
        self.exact.and_then(|e| e.as_rational())
    }

    /// `c - q_1`, exactly zero when the closed form equals `c` and exact
    /// whenever the closed form is rational.
    pub fn below(&self, c: Rational64) -> f64 {
        if let Some(e) = self.exact {
            if e.cmp_rational(c).is_eq() {
                return 0.0;
            }
            if let Some(r) = e.as_rational() {
                return rat_to_f64(c - r);
            }
        }
        rat_to_f64(c) - self.approx
    }

    pub fn exact_string(&self) -> Option<String> {
        self.exact.map(|e| e.to_string())
    }
}

/// Quantities of one graph that several checkers share, each computed at
/// most once.
pub(crate) struct Facts<'g> {
    pub g: &'g Graph,
    pub cfg: CheckConfig,
    pub stats: DegreeStats,
    pub connected: bool,
    pub q1: Radius,
    pub alpha: HalfInt,
    pub graph6: String,
    complement_q1: OnceCell<Radius>,
    deficiency: OnceCell<Option<DeficiencyWitness>>,
    b_member: OnceCell<Option<BMembership>>,
}

impl<'g> Facts<'g> {
    pub fn new(g: &'g Graph, cfg: &CheckConfig) -> Result<Self, TheoremError> {
        Ok(Facts {
            g,
            cfg: *cfg,
            stats: g.degree_stats(),
            connected: g.is_connected(),
            q1: Radius::of(g, &cfg.spectral)?,
            alpha: fractional_matching_number(g),
            graph6: to_graph6(g),
            complement_q1: OnceCell::new(),
            deficiency: OnceCell::new(),
            b_member: OnceCell::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn delta(&self) -> usize {
        self.stats.min
    }

    pub fn has_fpm(&self) -> bool {
        self.alpha.halves() == self.n() as u64
    }

    pub fn complement_q1(&self) -> Result<Radius, TheoremError> {
        if let Some(r) = self.complement_q1.get() {
            return Ok(*r);
        }
        let r = Radius::of(&self.g.complement(), &self.cfg.spectral)?;
        Ok(*self.complement_q1.get_or_init(|| r))
    }

    /// Brute-force deficiency witness, absent above the cap.
    pub fn deficiency(&self) -> Option<&DeficiencyWitness> {
        self.deficiency
            .get_or_init(|| brute_force_deficiency(self.g, self.cfg.brute_cap).ok())
            .as_ref()
    }

    pub fn b_member(&self) -> Result<Option<&BMembership>, TheoremError> {
        if self.b_member.get().is_none() {
            let m = checks::b_member_from_facts(self)?;
            let _ = self.b_member.set(m);
        }
        Ok(self.b_member.get().and_then(|m| m.as_ref()))
    }

    /// Connected with at least three vertices.
    pub fn require_connected(&self) -> Result<(), TheoremError> {
        if !self.connected {
            return Err(TheoremError::HypothesisUnmet(
                "graph is disconnected".into(),
            ));
        }
        if self.n() < 3 {
            return Err(TheoremError::HypothesisUnmet(format!(
                "graph has {} < 3 vertices",
                self.n()
            )));
        }
        Ok(())
    }

    pub fn witnesses(&self) -> Witnesses {
        Witnesses {
            n: self.n(),
            m: self.g.m(),
            min_degree: self.stats.min,
            max_degree: self.stats.max,
            avg_degree: self.stats.avg.to_string(),
            q1: Some(self.q1.approx),
            q1_exact: self.q1.exact_string(),
            ..Witnesses::default()
        }
    }

    pub fn report(
        &self,
        theorem: TheoremId,
        hypothesis: ConditionStatus,
        conclusion: ConditionStatus,
        witnesses: Witnesses,
        flags: Vec<String>,
    ) -> TheoremReport {
        TheoremReport {
            theorem,
            verdict: Verdict::from_conditions(&hypothesis, &conclusion),
            hypothesis,
            conclusion,
            witnesses,
            flags,
            graph6: self.graph6.clone(),
            epsilon: self.cfg.epsilon,
        }
    }
}
