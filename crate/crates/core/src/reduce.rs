//! Determinant-preserving graph transformations and the closed forms they
//! bottom out in.
//!
//! The workhorse is [`vertex_combine`]: adding `c` times the weight row of a
//! vertex `u` into a non-adjacent vertex `v` is a symmetric row-and-column
//! operation on the adjacency matrix, so it leaves the determinant unchanged.
//! Around it sit the pendant-vertex rules (isolating a pendant edge keeps the
//! determinant; detaching the resulting `P_2` contributes a factor `-w²`),
//! multiplicativity over connected components, and exact formulas for
//! weighted paths and cycles. Every step can be logged in a
//! [`ReductionTrace`] so a whole reduction is auditable after the fact.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{GraphError, WeightedGraph};
use crate::scalar::{pow, two_pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    /// `vertex_combine` needs two distinct vertices.
    SameVertex { v: usize },
    /// The combined vertices must not be joined by an edge.
    AdjacentVertices { v: usize, u: usize },
    /// A combine coefficient of zero would be a no-op and is rejected.
    ZeroCoefficient,
    /// The vertex does not have exactly one neighbor.
    NotPendant { v: usize, degree: usize },
    /// Cycles need at least three vertices.
    CycleTooShort { len: usize },
    Graph(GraphError),
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::SameVertex { v } => write!(f, "combine needs distinct vertices, got {v} twice"),
            ReduceError::AdjacentVertices { v, u } => {
                write!(f, "vertices {v} and {u} are adjacent")
            }
            ReduceError::ZeroCoefficient => write!(f, "combine coefficient must be nonzero"),
            ReduceError::NotPendant { v, degree } => {
                write!(f, "vertex {v} has degree {degree}, not 1")
            }
            ReduceError::CycleTooShort { len } => {
                write!(f, "cycle needs at least 3 edges, got {len}")
            }
            ReduceError::Graph(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for ReduceError {}

impl From<GraphError> for ReduceError {
    fn from(e: GraphError) -> Self {
        ReduceError::Graph(e)
    }
}

/// Adds `c` times the weight row of `u` into `v`: for every other vertex `b`,
/// the new weight of `{v, b}` is `w(vb) + c·w(ub)`, with zero results removed
/// from the edge set. Requires `v ≠ u`, the pair non-adjacent, and `c ≠ 0`;
/// under those conditions the adjacency determinant is unchanged.
pub fn vertex_combine<S: Scalar>(
    g: &WeightedGraph<S>,
    v: usize,
    u: usize,
    c: &S,
) -> Result<WeightedGraph<S>, ReduceError> {
    if v == u {
        return Err(ReduceError::SameVertex { v });
    }
    if c.is_zero() {
        return Err(ReduceError::ZeroCoefficient);
    }
    if g.has_edge(v, u) {
        return Err(ReduceError::AdjacentVertices { v, u });
    }
    // Validates both indices up front.
    g.neighbors(v)?;
    let mut out = g.clone();
    for b in g.neighbors(u)? {
        if b == v {
            continue;
        }
        let new_weight = g.weight(v, b) + c.clone() * g.weight(u, b);
        out = out.set_edge_weight(v, b, new_weight)?;
    }
    Ok(out)
}

/// For a pendant vertex `v` with unique neighbor `u`, removes every edge at
/// `u` except `uv`, turning `{v, u}` into a detached `P_2` component. The
/// determinant is unchanged because no basic figure can cover `v` except
/// through the edge `uv`.
pub fn pendant_isolate<S: Scalar>(
    g: &WeightedGraph<S>,
    v: usize,
) -> Result<WeightedGraph<S>, ReduceError> {
    let u = pendant_neighbor(g, v)?;
    let mut out = g.clone();
    for x in g.neighbors(u)? {
        if x != v {
            out = out.set_edge_weight(u, x, S::zero())?;
        }
    }
    Ok(out)
}

/// For a pendant vertex `v` with unique neighbor `u`, splits off the factor
/// `-w(vu)²` and returns it with the graph minus `{v, u}` (reindexed
/// compactly), so that `det(g) = factor · det(rest)`.
pub fn pendant_reduce<S: Scalar>(
    g: &WeightedGraph<S>,
    v: usize,
) -> Result<(S, WeightedGraph<S>), ReduceError> {
    let u = pendant_neighbor(g, v)?;
    let factor = -pow(&g.weight(v, u), 2);
    let (rest, _) = g.remove_vertices(&BTreeSet::from([v, u]))?;
    Ok((factor, rest))
}

fn pendant_neighbor<S: Scalar>(g: &WeightedGraph<S>, v: usize) -> Result<usize, ReduceError> {
    let neighbors = g.neighbors(v)?;
    if neighbors.len() != 1 {
        return Err(ReduceError::NotPendant {
            v,
            degree: neighbors.len(),
        });
    }
    Ok(*neighbors.iter().next().expect("one neighbor"))
}

/// Determinant as the product of `det_fn` over connected components; the
/// adjacency matrix is block-diagonal across components, so this equals
/// `det_fn` of the whole graph.
pub fn component_split_det<S: Scalar, E>(
    g: &WeightedGraph<S>,
    det_fn: impl Fn(&WeightedGraph<S>) -> Result<S, E>,
) -> Result<S, E> {
    let mut det = S::one();
    for component in g.connected_components() {
        let keep: BTreeSet<usize> = component.into_iter().collect();
        let (sub, _) = g
            .induced_subgraph(&keep)
            .expect("component vertices are in range");
        det = det * det_fn(&sub)?;
    }
    Ok(det)
}

/// Positional split of an edge sequence into the alternating classes used by
/// the path and cycle formulas: `e1` holds the 1st, 3rd, 5th… edges of the
/// caller's traversal order and `e2` the rest. The order is part of the
/// contract; the formulas are stated for a fixed traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBipartition {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
}

pub fn edge_bipartition(edge_count: usize) -> EdgeBipartition {
    EdgeBipartition {
        e1: (0..edge_count).step_by(2).collect(),
        e2: (1..edge_count).step_by(2).collect(),
    }
}

/// Determinant of a weighted path `P_n` given its `n-1` edge weights in path
/// order: zero for odd `n`, otherwise `(-1)^(n/2)` times the squared product
/// of the odd-numbered edges (the unique perfect matching).
pub fn path_det<S: Scalar>(weights: &[S]) -> S {
    let n = weights.len() + 1;
    if n % 2 == 1 {
        return S::zero();
    }
    let split = edge_bipartition(weights.len());
    let mut product = S::one();
    for &i in &split.e1 {
        product = product * weights[i].clone();
    }
    let value = pow(&product, 2);
    if (n / 2) % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Determinant of a weighted cycle `C_n` given its `n` edge weights in cyclic
/// order. Odd cycles give twice the product of all weights; even cycles
/// combine the cycle itself with its two perfect matchings, which collapses
/// to `-(p1 + p2)²` when `n ≡ 2 (mod 4)` and `(p1 - p2)²` when `4 | n`,
/// where `p1`, `p2` are the products over the alternating edge classes.
pub fn cycle_det<S: Scalar>(weights: &[S]) -> Result<S, ReduceError> {
    let n = weights.len();
    if n < 3 {
        return Err(ReduceError::CycleTooShort { len: n });
    }
    if n % 2 == 1 {
        let mut product = two_pow::<S>(1);
        for w in weights {
            product = product * w.clone();
        }
        return Ok(product);
    }
    let split = edge_bipartition(n);
    let mut p1 = S::one();
    for &i in &split.e1 {
        p1 = p1 * weights[i].clone();
    }
    let mut p2 = S::one();
    for &i in &split.e2 {
        p2 = p2 * weights[i].clone();
    }
    Ok(if n % 4 == 2 {
        -pow(&(p1 + p2), 2)
    } else {
        pow(&(p1 - p2), 2)
    })
}

/// What a [`ReductionStep`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// Row combine `v ← v + c·u`; determinant-preserving.
    Combine,
    /// Pendant isolation; determinant-preserving.
    Isolate,
    /// A detached `P_2` removed from the graph, moving `-w²` into the
    /// accumulated factor.
    DetachP2,
    /// Residual path evaluated in closed form.
    ClosedFormPath,
    /// Residual cycle evaluated in closed form.
    ClosedFormCycle,
    /// Product over connected components.
    ComponentSplit,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Combine => "combine",
            StepKind::Isolate => "isolate",
            StepKind::DetachP2 => "detach_p2",
            StepKind::ClosedFormPath => "closed_form_path",
            StepKind::ClosedFormCycle => "closed_form_cycle",
            StepKind::ComponentSplit => "component_split",
        }
    }
}

/// One logged reduction step: which vertices it touched, the combine
/// coefficient if any, and its multiplicative contribution to the
/// determinant (exactly one for the determinant-preserving kinds).
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep<S> {
    pub kind: StepKind,
    pub actors: Vec<usize>,
    /// Display labels for the actors (e.g. grid coordinates); falls back to
    /// the raw indices when absent.
    pub actor_labels: Option<Vec<String>>,
    pub coefficient: Option<S>,
    pub factor: S,
}

impl<S: Scalar> ReductionStep<S> {
    pub fn combine(v: usize, u: usize, coefficient: S) -> Self {
        ReductionStep {
            kind: StepKind::Combine,
            actors: vec![v, u],
            actor_labels: None,
            coefficient: Some(coefficient),
            factor: S::one(),
        }
    }

    pub fn isolate(v: usize) -> Self {
        ReductionStep {
            kind: StepKind::Isolate,
            actors: vec![v],
            actor_labels: None,
            coefficient: None,
            factor: S::one(),
        }
    }

    /// Detaching the `P_2` on `{a, b}` with edge weight `w` contributes
    /// `-w²`.
    pub fn detach_p2(a: usize, b: usize, edge_weight: &S) -> Self {
        ReductionStep {
            kind: StepKind::DetachP2,
            actors: vec![a, b],
            actor_labels: None,
            coefficient: None,
            factor: -pow(edge_weight, 2),
        }
    }

    pub fn closed_form_path(actors: Vec<usize>, value: S) -> Self {
        ReductionStep {
            kind: StepKind::ClosedFormPath,
            actors,
            actor_labels: None,
            coefficient: None,
            factor: value,
        }
    }

    pub fn closed_form_cycle(actors: Vec<usize>, value: S) -> Self {
        ReductionStep {
            kind: StepKind::ClosedFormCycle,
            actors,
            actor_labels: None,
            coefficient: None,
            factor: value,
        }
    }

    pub fn component_split(actors: Vec<usize>, value: S) -> Self {
        ReductionStep {
            kind: StepKind::ComponentSplit,
            actors,
            actor_labels: None,
            coefficient: None,
            factor: value,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.actors.len());
        self.actor_labels = Some(labels);
        self
    }
}

/// Ordered log of reduction steps with the running product of their factors.
///
/// While a reduction is in flight, `accumulated × det(current graph)` stays
/// equal to the determinant of the original graph; once the residual has
/// been folded in as a closed-form step, [`finish`](Self::finish) freezes
/// the total in `result`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace<S> {
    pub steps: Vec<ReductionStep<S>>,
    pub accumulated: S,
    pub result: Option<S>,
}

impl<S: Scalar> ReductionTrace<S> {
    pub fn new() -> Self {
        ReductionTrace {
            steps: Vec::new(),
            accumulated: S::one(),
            result: None,
        }
    }

    pub fn push(&mut self, step: ReductionStep<S>) {
        self.accumulated = self.accumulated.clone() * step.factor.clone();
        self.steps.push(step);
    }

    pub fn finish(&mut self) {
        self.result = Some(self.accumulated.clone());
    }

    pub fn count_kind(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

impl<S: Scalar> Default for ReductionTrace<S> {
    fn default() -> Self {
        ReductionTrace::new()
    }
}
