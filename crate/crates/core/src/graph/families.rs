//! Named graphs and the extremal families.

use serde::{Deserialize, Serialize};

use super::{Builder, Graph, GraphError};

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut b = Builder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v)?;
        }
    }
    Ok(b.finish())
}

pub fn empty(n: usize) -> Result<Graph, GraphError> {
    Ok(Builder::new(n)?.finish())
}

/// `C_n` with edges `i ~ i+1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut b = Builder::new(n)?;
    for i in 0..n {
        b.add_edge(i, (i + 1) % n)?;
    }
    Ok(b.finish())
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    let mut b = Builder::new(n)?;
    for i in 1..n {
        b.add_edge(i - 1, i)?;
    }
    Ok(b.finish())
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "complete bipartite parts must be non-empty, got {a},{b}"
        )));
    }
    empty(a)?.join(&empty(b)?)
}

/// The simple named families, for dispatch from textual specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete(usize),
    Empty(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
}

impl Family {
    pub fn build(self) -> Result<Graph, GraphError> {
        match self {
            Family::Complete(n) => complete(n),
            Family::Empty(n) => empty(n),
            Family::Cycle(n) => cycle(n),
            Family::Path(n) => path(n),
            Family::CompleteBipartite(a, b) => complete_bipartite(a, b),
        }
    }
}

/// Parameters of a connected bipartite graph whose larger part `X` has
/// `y + k` vertices of degree `delta` and whose other part `Y` has `y`
/// vertices of common degree `d_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFamilySpec {
    pub delta: usize,
    pub k: usize,
    pub y: usize,
    pub d_y: usize,
}

impl BFamilySpec {
    pub fn new(delta: usize, k: usize, y: usize, d_y: usize) -> Result<Self, GraphError> {
        let spec = BFamilySpec { delta, k, y, d_y };
        spec.validate()?;
        Ok(spec)
    }

    /// Derives `d_y` from the degree-sum identity `y * d_y = (y + k) * delta`.
    pub fn from_parts(delta: usize, k: usize, y: usize) -> Result<Self, GraphError> {
        if y == 0 || !((y + k) * delta).is_multiple_of(y) {
            return Err(GraphError::InvalidSpec(format!(
                "(y + k) * delta = {} is not divisible by y = {y}",
                (y + k) * delta
            )));
        }
        Self::new(delta, k, y, (y + k) * delta / y)
    }

    pub fn order(&self) -> usize {
        2 * self.y + self.k
    }

    fn validate(&self) -> Result<(), GraphError> {
        let fail = |msg: String| Err(GraphError::InvalidSpec(msg));
        if self.delta == 0 {
            return fail("delta must be at least 1".into());
        }
        if self.k == 0 {
            return fail("k must be a positive integer".into());
        }
        if self.y < self.delta {
            return fail(format!(
                "y = {} is smaller than delta = {}",
                self.y, self.delta
            ));
        }
        if self.y * self.d_y != (self.y + self.k) * self.delta {
            return fail(format!(
                "degree sums disagree: y * d_y = {} but (y + k) * delta = {}",
                self.y * self.d_y,
                (self.y + self.k) * self.delta
            ));
        }
        if self.d_y < self.delta {
            return fail(format!(
                "d_y = {} is below delta = {}",
                self.d_y, self.delta
            ));
        }
        Ok(())
    }
}

/// Builds a member of the bi-degree family for `spec`.
///
/// Vertices `0..y+k` form `X` and `y+k..2y+k` form `Y`. The `delta` stubs of
/// `x_i` go to `y_{(i*delta + j) mod y}` for `j in 0..delta`, which already
/// fixes every degree. If that layout is disconnected, components are merged
/// by degree-preserving switches on non-bridge edges; the result is checked
/// for exact degrees and connectivity before it is returned.
pub fn construct_b_member(spec: &BFamilySpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let BFamilySpec { delta, k, y, d_y } = *spec;
    let nx = y + k;
    let mut b = Builder::new(nx + y)?;
    for i in 0..nx {
        for j in 0..delta {
            b.add_edge(i, nx + (i * delta + j) % y)?;
        }
    }
    let mut g = b.finish();

    loop {
        let comps = g.components();
        if comps.len() == 1 {
            break;
        }
        let e1 = non_bridge_edge(&g, comps[0].as_slice());
        let e2 = non_bridge_edge(&g, comps[1].as_slice());
        let ((x1, y1), (x2, y2)) = match (e1, e2) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(GraphError::ConstructionFailed(format!(
                    "stub layout for {spec:?} is disconnected and has tree components"
                )))
            }
        };
        let mut b = Builder::new(g.n())?;
        for (u, v) in g.edges() {
            b.add_edge(u, v)?;
        }
        b.remove_edge(x1, y1);
        b.remove_edge(x2, y2);
        b.add_edge(x1, y2)?;
        b.add_edge(x2, y1)?;
        g = b.finish();
    }

    let degrees_ok =
        (0..nx).all(|v| g.degree(v) == delta) && (nx..nx + y).all(|v| g.degree(v) == d_y);
    if !degrees_ok || !g.is_connected() {
        return Err(GraphError::ConstructionFailed(format!(
            "result for {spec:?} is not a connected bi-degree graph"
        )));
    }
    Ok(g)
}

/// First edge `(x, y)` with `x < y` inside `comp` whose removal keeps its
/// endpoints connected.
fn non_bridge_edge(g: &Graph, comp: &[usize]) -> Option<(usize, usize)> {
    for &u in comp {
        for v in g.neighbors(u).filter(|&v| v > u) {
            if connected_without(g, u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

fn connected_without(g: &Graph, u: usize, v: usize) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(a) = stack.pop() {
        for w in g.neighbors(a) {
            if (a == u && w == v) || seen[w] {
                continue;
            }
            if w == v {
                return true;
            }
            seen[w] = true;
            stack.push(w);
        }
    }
    false
}

/// `(delta+1) K_1` joined with `h`, where `h` has order `delta`.
///
/// The independent vertices are `0..=delta`; `h` occupies `delta+1..2*delta+1`.
pub fn construct_exception(delta: usize, h: &Graph) -> Result<Graph, GraphError> {
    if delta == 0 || h.n() != delta {
        return Err(GraphError::InvalidParameter(format!(
            "H must have order delta = {delta}, got {}",
            h.n()
        )));
    }
    empty(delta + 1)?.join(h)
}

/// `K_{2t}` on `0..2t` plus vertex `2t` adjacent to `0..t`.
pub fn attached_clique(t: usize) -> Result<Graph, GraphError> {
    if t < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "t must be at least 2, got {t}"
        )));
    }
    let mut b = Builder::new(2 * t + 1)?;
    for u in 0..2 * t {
        for v in u + 1..2 * t {
            b.add_edge(u, v)?;
        }
    }
    for u in 0..t {
        b.add_edge(2 * t, u)?;
    }
    Ok(b.finish())
}
