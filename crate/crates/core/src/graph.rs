//! Value-semantics weighted undirected graphs.
//!
//! A graph is a vertex count plus a map from unordered vertex pairs to
//! nonzero weights. Absent pair ⇔ weight zero ⇔ non-edge; this is a hard
//! representation invariant, so every mutator drops pairs whose weight
//! becomes zero. All operations return new values; nothing is mutated in
//! place.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scalar::Scalar;

/// Errors from graph construction and vertex/edge manipulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The same unordered pair was supplied twice.
    DuplicateEdge { a: usize, b: usize },
    /// An endpoint pair with `a == b`.
    SelfLoop { v: usize },
    /// A constructor was handed an explicit zero weight.
    ZeroWeightEdge { a: usize, b: usize },
    /// A vertex index at or beyond the vertex count.
    IndexOutOfRange { index: usize, vertex_count: usize },
    /// A relabeling that is not a bijection on the vertex set.
    NotAPermutation,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateEdge { a, b } => write!(f, "duplicate edge {a}-{b}"),
            GraphError::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            GraphError::ZeroWeightEdge { a, b } => write!(f, "zero weight on edge {a}-{b}"),
            GraphError::IndexOutOfRange {
                index,
                vertex_count,
            } => write!(
                f,
                "vertex index {index} out of range (vertex count {vertex_count})"
            ),
            GraphError::NotAPermutation => write!(f, "relabeling is not a permutation"),
        }
    }
}

impl std::error::Error for GraphError {}

/// Undirected graph on vertices `0..vertex_count` with nonzero weights of
/// type `S` on its edges.
///
/// Stored weights are keyed by `(min, max)` so symmetry holds by
/// construction; the diagonal of the adjacency matrix is zero because
/// self-pairs are rejected everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph<S> {
    vertex_count: usize,
    weights: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> WeightedGraph<S> {
    /// Graph with `vertex_count` vertices and no edges.
    pub fn empty(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            weights: BTreeMap::new(),
        }
    }

    /// Builds a graph from an edge list. Every entry must name two distinct
    /// in-range vertices, carry a nonzero weight, and no unordered pair may
    /// repeat.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::empty(vertex_count);
        for (a, b, w) in edges {
            g.check_pair(a, b)?;
            if w.is_zero() {
                return Err(GraphError::ZeroWeightEdge { a, b });
            }
            let key = ordered(a, b);
            if g.weights.contains_key(&key) {
                return Err(GraphError::DuplicateEdge { a, b });
            }
            g.weights.insert(key, w);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// Weight of the unordered pair `{a, b}`; zero when the edge is absent.
    pub fn weight(&self, a: usize, b: usize) -> S {
        if a == b {
            return S::zero();
        }
        self.weights
            .get(&ordered(a, b))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.weights.contains_key(&ordered(a, b))
    }

    /// Edges in ascending `(min, max)` order with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.weights.iter().map(|(&(a, b), w)| (a, b, w))
    }

    /// Returns a copy with the weight of `{a, b}` set to `w`. Setting zero
    /// removes the edge; setting a nonzero weight creates or overwrites it.
    pub fn set_edge_weight(&self, a: usize, b: usize, w: S) -> Result<Self, GraphError> {
        self.check_pair(a, b)?;
        let mut next = self.clone();
        if w.is_zero() {
            next.weights.remove(&ordered(a, b));
        } else {
            next.weights.insert(ordered(a, b), w);
        }
        Ok(next)
    }

    /// Vertices joined to `v` by an edge.
    pub fn neighbors(&self, v: usize) -> Result<BTreeSet<usize>, GraphError> {
        self.check_vertex(v)?;
        Ok(self
            .weights
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect())
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        Ok(self.neighbors(v)?.len())
    }

    /// Connected components under the nonzero-weight edge relation, each
    /// sorted ascending, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for &(a, b) in self.weights.keys() {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut component = vec![start];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &u in &adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        component.push(u);
                        stack.push(u);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// The symmetric adjacency matrix with zero diagonal, as rows.
    pub fn adjacency_matrix(&self) -> Vec<Vec<S>> {
        let n = self.vertex_count;
        let mut rows = vec![vec![S::zero(); n]; n];
        for (&(a, b), w) in &self.weights {
            rows[a][b] = w.clone();
            rows[b][a] = w.clone();
        }
        rows
    }

    /// Removes the vertices in `remove`, keeping all edges among the
    /// survivors. Survivors are reindexed compactly in ascending old-index
    /// order; the returned map sends each old index to its new index, or
    /// `None` for removed vertices.
    pub fn remove_vertices(
        &self,
        remove: &BTreeSet<usize>,
    ) -> Result<(Self, Vec<Option<usize>>), GraphError> {
        for &v in remove {
            self.check_vertex(v)?;
        }
        let mut map = vec![None; self.vertex_count];
        let mut next_index = 0;
        for (old, slot) in map.iter_mut().enumerate() {
            if !remove.contains(&old) {
                *slot = Some(next_index);
                next_index += 1;
            }
        }
        let mut weights = BTreeMap::new();
        for (&(a, b), w) in &self.weights {
            if let (Some(na), Some(nb)) = (map[a], map[b]) {
                weights.insert(ordered(na, nb), w.clone());
            }
        }
        Ok((
            WeightedGraph {
                vertex_count: next_index,
                weights,
            },
            map,
        ))
    }

    /// The induced subgraph on `keep` (equivalent to removing the
    /// complement), with the same reindexing map convention.
    pub fn induced_subgraph(
        &self,
        keep: &BTreeSet<usize>,
    ) -> Result<(Self, Vec<Option<usize>>), GraphError> {
        let complement: BTreeSet<usize> =
            (0..self.vertex_count).filter(|v| !keep.contains(v)).collect();
        for &v in keep {
            self.check_vertex(v)?;
        }
        self.remove_vertices(&complement)
    }

    /// Relabels vertices by `perm`, where `perm[old] = new`. `perm` must be a
    /// permutation of `0..vertex_count`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let mut seen = vec![false; self.vertex_count];
        for &target in perm {
            self.check_vertex(target)?;
            if seen[target] {
                return Err(GraphError::NotAPermutation);
            }
            seen[target] = true;
        }
        if perm.len() != self.vertex_count {
            return Err(GraphError::NotAPermutation);
        }
        let mut weights = BTreeMap::new();
        for (&(a, b), w) in &self.weights {
            weights.insert(ordered(perm[a], perm[b]), w.clone());
        }
        Ok(WeightedGraph {
            vertex_count: self.vertex_count,
            weights,
        })
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.vertex_count {
            return Err(GraphError::IndexOutOfRange {
                index: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::SelfLoop { v: a });
        }
        Ok(())
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Disjoint union; vertices of `right` are shifted past those of `left`.
pub fn disjoint_union<S: Scalar>(
    left: &WeightedGraph<S>,
    right: &WeightedGraph<S>,
) -> WeightedGraph<S> {
    let offset = left.vertex_count();
    let mut weights = left.weights.clone();
    for (a, b, w) in right.edges() {
        weights.insert((a + offset, b + offset), w.clone());
    }
    WeightedGraph {
        vertex_count: offset + right.vertex_count(),
        weights,
    }
}
