//! Determinant by enumeration of basic figures.
//!
//! A basic figure of `G` is a spanning subgraph whose components are single
//! edges (`P_2`) or cycles. Each figure `Γ` contributes
//! `(-1)^sg(Γ) · 2^c(Γ) · ∏_{e ∈ P2(Γ)} w(e)² · ∏_{e ∈ C(Γ)} w(e)`
//! to `det A(G)`, where `c(Γ)` counts cycle components and `sg(Γ)` counts
//! components with an even number of vertices. Summing over all figures gives
//! the determinant exactly; no figures means determinant zero.

use std::collections::BTreeSet;

use crate::graph::WeightedGraph;
use crate::scalar::{pow, two_pow, Scalar};

use super::{DetError, DEFAULT_ENUM_CAP};

/// A spanning subgraph with only `P_2` and cycle components.
///
/// Cycles are stored canonically: lowest vertex first, and the second vertex
/// smaller than the last, which fixes both rotation and orientation. `P_2`
/// edges are kept as ordered `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicFigure {
    pub p2_edges: BTreeSet<(usize, usize)>,
    pub cycles: Vec<Vec<usize>>,
}

impl BasicFigure {
    /// Number of cycle components.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Number of components with an even number of vertices: every `P_2`
    /// plus every even-length cycle.
    pub fn even_component_count(&self) -> usize {
        self.p2_edges.len() + self.cycles.iter().filter(|c| c.len() % 2 == 0).count()
    }

    pub fn component_count(&self) -> usize {
        self.p2_edges.len() + self.cycles.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.p2_edges.len() + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    /// The figure's term in the determinant expansion: squared weights over
    /// `P_2` edges, plain weights around cycles, doubled per cycle, with the
    /// sign from the even-component count.
    pub fn contribution<S: Scalar>(&self, g: &WeightedGraph<S>) -> S {
        let mut term = two_pow::<S>(self.cycle_count());
        for &(a, b) in &self.p2_edges {
            term = term * pow(&g.weight(a, b), 2);
        }
        for cycle in &self.cycles {
            for i in 0..cycle.len() {
                term = term * g.weight(cycle[i], cycle[(i + 1) % cycle.len()]);
            }
        }
        if self.even_component_count() % 2 == 1 {
            term = -term;
        }
        term
    }
}

/// All basic figures of `g`, under the default enumeration cap.
pub fn enumerate_basic_figures<S: Scalar>(
    g: &WeightedGraph<S>,
) -> Result<Vec<BasicFigure>, DetError> {
    enumerate_basic_figures_with_cap(g, DEFAULT_ENUM_CAP)
}

/// All basic figures of `g`, erroring if the vertex count exceeds `cap`.
///
/// The recursion always resolves the lowest-indexed uncovered vertex first,
/// matching it to a free neighbor or growing a simple cycle anchored at it;
/// the canonical orientation rule means every figure is produced exactly
/// once, in a deterministic order.
pub fn enumerate_basic_figures_with_cap<S: Scalar>(
    g: &WeightedGraph<S>,
    cap: usize,
) -> Result<Vec<BasicFigure>, DetError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(DetError::TooLargeForEnumeration {
            vertex_count: n,
            cap,
        });
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b, _) in g.edges() {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut state = Enumerator {
        adjacency,
        covered: vec![false; n],
        p2_edges: Vec::new(),
        cycles: Vec::new(),
        figures: Vec::new(),
    };
    state.cover_next();
    Ok(state.figures)
}

struct Enumerator {
    adjacency: Vec<Vec<usize>>,
    covered: Vec<bool>,
    p2_edges: Vec<(usize, usize)>,
    cycles: Vec<Vec<usize>>,
    figures: Vec<BasicFigure>,
}

impl Enumerator {
    /// Covers the lowest uncovered vertex with a `P_2` edge or a cycle and
    /// recurses; emits the assembled figure when everything is covered.
    fn cover_next(&mut self) {
        let Some(v) = self.covered.iter().position(|&c| !c) else {
            self.figures.push(BasicFigure {
                p2_edges: self.p2_edges.iter().copied().collect(),
                cycles: self.cycles.clone(),
            });
            return;
        };
        self.covered[v] = true;
        // Anything uncovered has a higher index than v, so every P_2 pairs
        // v with a higher neighbor.
        for i in 0..self.adjacency[v].len() {
            let u = self.adjacency[v][i];
            if !self.covered[u] {
                self.covered[u] = true;
                self.p2_edges.push((v, u));
                self.cover_next();
                self.p2_edges.pop();
                self.covered[u] = false;
            }
        }
        let mut path = vec![v];
        self.grow_cycle(&mut path);
        self.covered[v] = false;
    }

    /// Extends a simple path anchored at `path[0]`, recording it as a cycle
    /// whenever the end closes back to the anchor with length ≥ 3; the
    /// orientation rule `path[1] < path[last]` accepts each cycle once.
    fn grow_cycle(&mut self, path: &mut Vec<usize>) {
        let last = *path.last().expect("path starts non-empty");
        if path.len() >= 3 && path[1] < last && self.adjacency[last].binary_search(&path[0]).is_ok()
        {
            self.cycles.push(path.clone());
            self.cover_next();
            self.cycles.pop();
        }
        for i in 0..self.adjacency[last].len() {
            let u = self.adjacency[last][i];
            if !self.covered[u] {
                self.covered[u] = true;
                path.push(u);
                self.grow_cycle(path);
                path.pop();
                self.covered[u] = false;
            }
        }
    }
}

/// `det A(g)` by the basic-figure expansion, under the default cap.
pub fn sachs_det<S: Scalar>(g: &WeightedGraph<S>) -> Result<S, DetError> {
    sachs_det_with_cap(g, DEFAULT_ENUM_CAP)
}

/// `det A(g)` by the basic-figure expansion with an explicit cap.
pub fn sachs_det_with_cap<S: Scalar>(g: &WeightedGraph<S>, cap: usize) -> Result<S, DetError> {
    let figures = enumerate_basic_figures_with_cap(g, cap)?;
    let mut det = S::zero();
    for figure in &figures {
        det = det + figure.contribution(g);
    }
    Ok(det)
}
