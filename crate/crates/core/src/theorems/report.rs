use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::VertexSet;
use crate::matching::HalfInt;

/// Where a quantity sits relative to its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Fails,
    Boundary,
}

/// A tri-state condition. `margin` is the signed distance to the threshold
/// (positive means the condition holds) and is absent for purely boolean
/// conditions. `Boundary` iff `|margin| <= epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionStatus {
    pub status: Status,
    pub margin: Option<f64>,
}

impl ConditionStatus {
    pub fn from_margin(margin: f64, epsilon: f64) -> Self {
        let status = if margin.abs() <= epsilon {
            Status::Boundary
        } else if margin > 0.0 {
            Status::Holds
        } else {
            Status::Fails
        };
        ConditionStatus {
            status,
            margin: Some(margin),
        }
    }

    pub fn boolean(holds: bool) -> Self {
        ConditionStatus {
            status: if holds { Status::Holds } else { Status::Fails },
            margin: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Violation,
    Vacuous,
    Boundary,
}

impl Verdict {
    /// A failed hypothesis says nothing; a hypothesis on its threshold is
    /// reported as such; otherwise the conclusion decides.
    pub fn from_conditions(hypothesis: &ConditionStatus, conclusion: &ConditionStatus) -> Self {
        match (hypothesis.status, conclusion.status) {
            (Status::Fails, _) => Verdict::Vacuous,
            (Status::Boundary, _) => Verdict::Boundary,
            (Status::Holds, Status::Holds) => Verdict::Consistent,
            (Status::Holds, Status::Boundary) => Verdict::Boundary,
            (Status::Holds, Status::Fails) => Verdict::Violation,
        }
    }
}

/// The statements that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `2 delta <= 2 avg <= q1 <= 2 Delta`, equalities iff regular.
    DegreeBounds,
    /// `q1(H) <= q1(G)` for a subgraph `H` of a connected `G`.
    SubgraphMonotonicity,
    /// `q1 < 2 n delta / (n - k)` implies `alpha'_* > (n - k) / 2`.
    FmLower,
    /// `alpha'_* >= n delta / q1`, with the equality cases.
    BoundRatio,
    /// `q1 < 2 n delta / (n - 1)` implies a fractional perfect matching.
    FpmQ1,
    /// `q1(complement) < 2 delta` implies a fractional perfect matching.
    FpmComplement,
    /// `q1(complement) < 2 delta + 2` implies a fractional perfect matching
    /// unless the graph is an exception graph.
    FpmComplementRefined,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::DegreeBounds,
        TheoremId::SubgraphMonotonicity,
        TheoremId::FmLower,
        TheoremId::BoundRatio,
        TheoremId::FpmQ1,
        TheoremId::FpmComplement,
        TheoremId::FpmComplementRefined,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::DegreeBounds => "degree-bounds",
            TheoremId::SubgraphMonotonicity => "subgraph-monotonicity",
            TheoremId::FmLower => "fm-lower",
            TheoremId::BoundRatio => "bound-ratio",
            TheoremId::FpmQ1 => "fpm-q1",
            TheoremId::FpmComplement => "fpm-complement",
            TheoremId::FpmComplementRefined => "fpm-complement-refined",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                format!(
                    "unknown theorem `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// How an equality `alpha'_* = n delta / q1` is accounted for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EqualityCase {
    /// A verified bi-degree bipartite member with integer `k = k*`.
    BMember { k: usize },
    /// A regular graph with a fractional perfect matching: `k* = 0`, which
    /// the family definition excludes. Needs human review.
    RegularFpm,
    /// Neither of the above.
    Uncharacterized,
}

/// Parameters and cross-checked closed forms of a bi-degree bipartite member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BMembership {
    pub delta: usize,
    pub k: usize,
    pub d_y: usize,
    pub x: VertexSet,
    pub y: VertexSet,
    /// `(n - k) / 2`
    pub alpha_star_formula: HalfInt,
    pub alpha_star: HalfInt,
    /// `2 n delta / (n - k)` as `p/q`
    pub q1_formula: String,
    pub q1_formula_value: f64,
    pub q1: f64,
    /// `q1` from the `(X, Y)` quotient, as `p/q`
    pub q1_quotient: String,
    pub formulas_agree: bool,
}

/// Numbers and sets backing a report. Only the fields relevant to a given
/// statement are filled in.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// exact average degree `p/q`
    pub avg_degree: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1: Option<f64>,
    /// closed form of `q1` when available, `p/q`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1_subgraph: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1_complement: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1_complement_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_star: Option<HalfInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fpm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_member: Option<BMembership>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exception_delta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deletion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity_iff: Option<bool>,
}

/// Outcome of checking one statement on one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub hypothesis: ConditionStatus,
    pub conclusion: ConditionStatus,
    pub verdict: Verdict,
    pub witnesses: Witnesses,
    /// Notes for human review, e.g. equality cases outside the family.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
    pub graph6: String,
    pub epsilon: f64,
}
