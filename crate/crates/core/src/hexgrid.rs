//! Hexagonal (brick-wall) grid graphs and their determinants by reduction.
//!
//! `H(n, m)` consists of `m` horizontal paths on `2n+2` vertices, a shorter
//! bottom path on `2n` vertices, and alternating rung edges between
//! consecutive rows; it is the graph of a hexagon-shaped benzenoid strip with
//! `n` hexagons along one side and `m` along the other. With the first-row
//! weighting `w = (x+i)/i` on the even-position edges (`x = 0` gives the
//! unweighted graph), its determinant is
//!
//! ```text
//! det A(H(n, m)) = (-1)^(nm+n+m) * C(x+n+m, n)^2
//! ```
//!
//! [`reduce_det`] derives that value constructively: each call to
//! [`peel_first_row`] detaches the first row as `n+1` unit-weight `P_2`
//! components using only determinant-preserving combines and pendant
//! isolations, leaving `H(n, m-1)` with the parameter bumped to `x+1`; after
//! `m` rounds the residual is a weighted path whose determinant is known in
//! closed form. No adjacency matrix is ever built along the way.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::graph::GraphError;
use crate::reduce::{self, ReduceError, ReductionStep, ReductionTrace};
use crate::{Graph, Int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum HexError {
    /// Grid parameters need `n ≥ 1` and `m ≥ 1`.
    InvalidSpec { n: u64, m: u64 },
    /// The peel schedule met a graph that does not have the expected shape:
    /// a cancellation edge was absent, a coefficient came out zero, or a
    /// vertex that should be pendant is not.
    ScheduleBroken { detail: String },
    Reduce(ReduceError),
}

impl fmt::Display for HexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HexError::InvalidSpec { n, m } => {
                write!(f, "invalid grid parameters n={n}, m={m} (both must be at least 1)")
            }
            HexError::ScheduleBroken { detail } => write!(f, "reduction schedule broken: {detail}"),
            HexError::Reduce(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for HexError {}

impl From<ReduceError> for HexError {
    fn from(e: ReduceError) -> Self {
        HexError::Reduce(e)
    }
}

impl From<GraphError> for HexError {
    fn from(e: GraphError) -> Self {
        HexError::Reduce(ReduceError::Graph(e))
    }
}

/// Parameters of a weighted hexagonal grid: `n` and `m` count the hexagons
/// along the two sides, `x` is the non-negative weighting parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n: u64,
    pub m: u64,
    pub x: u64,
}

impl GridSpec {
    pub fn new(n: u64, m: u64, x: u64) -> Result<Self, HexError> {
        let spec = GridSpec { n, m, x };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), HexError> {
        if self.n == 0 || self.m == 0 {
            return Err(HexError::InvalidSpec {
                n: self.n,
                m: self.m,
            });
        }
        Ok(())
    }

    /// `2(nm + n + m)`.
    pub fn vertex_count(&self) -> usize {
        2 * (self.n * self.m + self.n + self.m) as usize
    }

    /// `3nm + 2m + 2n - 1`.
    pub fn edge_count(&self) -> usize {
        (3 * self.n * self.m + 2 * self.m + 2 * self.n - 1) as usize
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(n={}, m={}, x={})", self.n, self.m, self.x)
    }
}

/// Bijection between vertex indices and grid coordinates `(row, col)`.
///
/// Rows `1..=m` have columns `1..=2n+2`; the short row `m+1` has columns
/// `2..=2n+1`. Indices are row-major, so dropping the whole first row shifts
/// every surviving index down by `2n+2` and renumbers rows by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridLabeling {
    n: u64,
    m: u64,
}

impl GridLabeling {
    pub fn new(spec: &GridSpec) -> Self {
        GridLabeling {
            n: spec.n,
            m: spec.m,
        }
    }

    pub fn vertex_count(&self) -> usize {
        2 * (self.n * self.m + self.n + self.m) as usize
    }

    /// Index of the vertex at `(row, col)`, if that coordinate exists.
    pub fn index(&self, row: u64, col: u64) -> Option<usize> {
        let long_row = 2 * self.n + 2;
        if (1..=self.m).contains(&row) && (1..=long_row).contains(&col) {
            Some(((row - 1) * long_row + (col - 1)) as usize)
        } else if row == self.m + 1 && (2..=2 * self.n + 1).contains(&col) {
            Some((self.m * long_row + (col - 2)) as usize)
        } else {
            None
        }
    }

    /// Coordinates of a vertex index, if it is in range.
    pub fn label(&self, index: usize) -> Option<(u64, u64)> {
        let index = index as u64;
        let long_row = 2 * self.n + 2;
        let long_total = self.m * long_row;
        if index < long_total {
            Some((index / long_row + 1, index % long_row + 1))
        } else if index < long_total + 2 * self.n {
            Some((self.m + 1, index - long_total + 2))
        } else {
            None
        }
    }
}

/// Builds the weighted grid for `spec` along with its labeling.
///
/// Every edge has weight one except the even-position edges of the first
/// row, where the edge between columns `2i` and `2i+1` carries `(x+i)/i`.
pub fn build_grid(spec: &GridSpec) -> Result<(Graph, GridLabeling), HexError> {
    spec.validate()?;
    let labeling = GridLabeling::new(spec);
    let (n, m) = (spec.n, spec.m);
    let at = |row, col| {
        labeling
            .index(row, col)
            .expect("construction stays inside the labeling")
    };
    let one = Rational::one();
    let mut edges: Vec<(usize, usize, Rational)> = Vec::with_capacity(spec.edge_count());
    for row in 1..=m {
        for col in 1..=2 * n + 1 {
            let w = if row == 1 && col % 2 == 0 {
                let i = col / 2;
                Rational::new(Int::from(spec.x + i), Int::from(i))
            } else {
                one.clone()
            };
            edges.push((at(row, col), at(row, col + 1), w));
        }
    }
    for col in 2..=2 * n {
        edges.push((at(m + 1, col), at(m + 1, col + 1), one.clone()));
    }
    for row in 1..=m {
        edges.push((at(row + 1, 2), at(row, 1), one.clone()));
        for k in 1..=n {
            edges.push((at(row + 1, 2 * k + 1), at(row, 2 * k + 2), one.clone()));
        }
    }
    let graph = Graph::new(labeling.vertex_count(), edges)
        .expect("grid edges are distinct, in range and nonzero");
    Ok((graph, labeling))
}

/// Binomial coefficient `C(a, b)` as a big integer; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> Int {
    if b > a {
        return Int::zero();
    }
    let b = b.min(a - b);
    let mut acc = Int::one();
    for i in 1..=b {
        acc = acc * Int::from(a - b + i) / Int::from(i);
    }
    acc
}

/// `(-1)^(nm+n+m) * C(x+n+m, n)^2`, the grid determinant in closed form.
pub fn closed_form(spec: &GridSpec) -> Result<Rational, HexError> {
    spec.validate()?;
    let c = binomial(spec.x + spec.n + spec.m, spec.n);
    let magnitude = &c * &c;
    let exponent = spec.n * spec.m + spec.n + spec.m;
    Ok(Rational::from_integer(if exponent % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }))
}

/// Steps the peel driver through the grid by coordinates, keeping the
/// coordinate → index map in sync as detached pairs are removed.
struct PeelState<'a> {
    g: Graph,
    labels: Vec<(u64, u64)>,
    index_of: BTreeMap<(u64, u64), usize>,
    row_offset: u64,
    observe: &'a mut dyn FnMut(&Graph, &ReductionStep<Rational>),
}

impl<'a> PeelState<'a> {
    fn new(
        g: Graph,
        labeling: &GridLabeling,
        row_offset: u64,
        observe: &'a mut dyn FnMut(&Graph, &ReductionStep<Rational>),
    ) -> Result<Self, HexError> {
        let mut labels = Vec::with_capacity(g.vertex_count());
        for index in 0..g.vertex_count() {
            labels.push(labeling.label(index).ok_or_else(|| HexError::ScheduleBroken {
                detail: format!("vertex {index} outside the grid labeling"),
            })?);
        }
        let index_of = labels
            .iter()
            .enumerate()
            .map(|(index, &lbl)| (lbl, index))
            .collect();
        Ok(PeelState {
            g,
            labels,
            index_of,
            row_offset,
            observe,
        })
    }

    fn display(&self, (row, col): (u64, u64)) -> String {
        format!("r{}c{}", row + self.row_offset, col)
    }

    fn idx(&self, lbl: (u64, u64)) -> Result<usize, HexError> {
        self.index_of
            .get(&lbl)
            .copied()
            .ok_or_else(|| HexError::ScheduleBroken {
                detail: format!("vertex {} is not in the graph", self.display(lbl)),
            })
    }

    fn record(&mut self, trace: &mut ReductionTrace<Rational>, step: ReductionStep<Rational>) {
        trace.push(step);
        (self.observe)(&self.g, trace.steps.last().expect("just pushed"));
    }

    /// Combines `u` into `v` with the coefficient that cancels the edge
    /// `{v, target}`, computed from the live weights `-w(v,t)/w(u,t)`.
    fn combine_cancel(
        &mut self,
        trace: &mut ReductionTrace<Rational>,
        v: (u64, u64),
        u: (u64, u64),
        target: (u64, u64),
    ) -> Result<(), HexError> {
        let (vi, ui, ti) = (self.idx(v)?, self.idx(u)?, self.idx(target)?);
        let wv = self.g.weight(vi, ti);
        let wu = self.g.weight(ui, ti);
        if wv.is_zero() || wu.is_zero() {
            return Err(HexError::ScheduleBroken {
                detail: format!(
                    "cannot cancel edge {}-{} through {}: weights {wv} and {wu}",
                    self.display(v),
                    self.display(target),
                    self.display(u),
                ),
            });
        }
        let c = -(wv / wu);
        self.g = reduce::vertex_combine(&self.g, vi, ui, &c)?;
        debug_assert!(self.g.weight(vi, ti).is_zero());
        let step = ReductionStep::combine(vi, ui, c)
            .with_labels(vec![self.display(v), self.display(u)]);
        self.record(trace, step);
        Ok(())
    }

    fn isolate(
        &mut self,
        trace: &mut ReductionTrace<Rational>,
        v: (u64, u64),
    ) -> Result<(), HexError> {
        let vi = self.idx(v)?;
        self.g = reduce::pendant_isolate(&self.g, vi).map_err(|e| HexError::ScheduleBroken {
            detail: format!("isolate {}: {e}", self.display(v)),
        })?;
        let step = ReductionStep::isolate(vi).with_labels(vec![self.display(v)]);
        self.record(trace, step);
        Ok(())
    }

    /// Removes a fully isolated `P_2` pair from the graph, logging its
    /// `-w²` factor and compacting the coordinate map.
    fn detach(
        &mut self,
        trace: &mut ReductionTrace<Rational>,
        a: (u64, u64),
        b: (u64, u64),
    ) -> Result<(), HexError> {
        let (ai, bi) = (self.idx(a)?, self.idx(b)?);
        let w = self.g.weight(ai, bi);
        if w.is_zero() || self.g.degree(ai)? != 1 || self.g.degree(bi)? != 1 {
            return Err(HexError::ScheduleBroken {
                detail: format!(
                    "{}-{} is not an isolated edge",
                    self.display(a),
                    self.display(b)
                ),
            });
        }
        let step = ReductionStep::detach_p2(ai, bi, &w)
            .with_labels(vec![self.display(a), self.display(b)]);
        let (next, map) = self.g.remove_vertices(&BTreeSet::from([ai, bi]))?;
        self.g = next;
        let mut labels = vec![(0, 0); self.g.vertex_count()];
        for (old, &lbl) in self.labels.iter().enumerate() {
            if let Some(new) = map[old] {
                labels[new] = lbl;
            }
        }
        self.labels = labels;
        self.index_of = self
            .labels
            .iter()
            .enumerate()
            .map(|(index, &lbl)| (lbl, index))
            .collect();
        self.record(trace, step);
        Ok(())
    }
}

/// Detaches the first row of a grid-shaped graph as `n+1` unit `P_2`
/// components, appending every step to `trace`.
///
/// `g` must be `build_grid(spec)` or the residual of previous peels (which
/// has the same shape with `x` advanced). Returns the residual graph,
/// exactly the grid `(n, m-1, x+1)` under the row-major relabeling, together
/// with that grid's parameters; the parameters are `None` when `m = 1` and
/// the residual is the final weighted path on `2n` vertices.
pub fn peel_first_row(
    g: &Graph,
    spec: &GridSpec,
    labeling: &GridLabeling,
    trace: &mut ReductionTrace<Rational>,
) -> Result<(Graph, Option<GridSpec>), HexError> {
    peel_first_row_observed(g, spec, labeling, trace, 0, &mut |_, _| {})
}

/// [`peel_first_row`] with bookkeeping hooks: `row_offset` is added to row
/// numbers in step labels (so multi-peel traces show original coordinates),
/// and `observe` is called with the graph state after every recorded step.
pub fn peel_first_row_observed(
    g: &Graph,
    spec: &GridSpec,
    labeling: &GridLabeling,
    trace: &mut ReductionTrace<Rational>,
    row_offset: u64,
    observe: &mut dyn FnMut(&Graph, &ReductionStep<Rational>),
) -> Result<(Graph, Option<GridSpec>), HexError> {
    spec.validate()?;
    if g.vertex_count() != labeling.vertex_count() {
        return Err(HexError::ScheduleBroken {
            detail: format!(
                "graph has {} vertices but the labeling expects {}",
                g.vertex_count(),
                labeling.vertex_count()
            ),
        });
    }
    let mut state = PeelState::new(g.clone(), labeling, row_offset, observe)?;
    let n = spec.n;

    // Opening hexagon: cancel the rung at column 1, which leaves the row-1
    // corner pendant, then split off the first unit pair.
    state.combine_cancel(trace, (2, 2), (1, 2), (1, 1))?;
    state.isolate(trace, (1, 1))?;
    state.detach(trace, (1, 1), (1, 2))?;

    for k in 0..n {
        // Cancel the rung between row 2 and row 1 at columns 2k+3 / 2k+4.
        state.combine_cancel(trace, (2, 2 * k + 3), (1, 2 * k + 3), (1, 2 * k + 4))?;
        if k + 1 < n {
            // Cancel the row-1 edge right of the pair about to detach, free
            // the pair, then cancel the diagonal the first combine created.
            state.combine_cancel(trace, (1, 2 * k + 5), (1, 2 * k + 3), (1, 2 * k + 4))?;
            state.isolate(trace, (1, 2 * k + 4))?;
            state.detach(trace, (1, 2 * k + 3), (1, 2 * k + 4))?;
            state.combine_cancel(trace, (1, 2 * k + 5), (2, 2 * k + 3), (2, 2 * k + 2))?;
        }
    }

    // The far corner is pendant once the last rung is gone.
    state.isolate(trace, (1, 2 * n + 2))?;
    state.detach(trace, (1, 2 * n + 1), (1, 2 * n + 2))?;

    let reduced = if spec.m >= 2 {
        Some(GridSpec {
            n: spec.n,
            m: spec.m - 1,
            x: spec.x + 1,
        })
    } else {
        None
    };
    Ok((state.g, reduced))
}

/// Full determinant of the grid by iterated row peeling: `m` peels followed
/// by the closed-form value of the residual weighted path. The returned
/// value equals [`closed_form`] and is reached without ever materialising
/// the adjacency matrix.
pub fn reduce_det(spec: &GridSpec) -> Result<(Rational, ReductionTrace<Rational>), HexError> {
    reduce_det_observed(spec, &mut |_, _| {})
}

/// [`reduce_det`] with a step observer (see [`peel_first_row_observed`]).
pub fn reduce_det_observed(
    spec: &GridSpec,
    observe: &mut dyn FnMut(&Graph, &ReductionStep<Rational>),
) -> Result<(Rational, ReductionTrace<Rational>), HexError> {
    spec.validate()?;
    let (mut g, _) = build_grid(spec)?;
    let mut trace = ReductionTrace::new();
    let mut current = *spec;
    let mut row_offset = 0;
    loop {
        let labeling = GridLabeling::new(&current);
        let (residual, reduced) =
            peel_first_row_observed(&g, &current, &labeling, &mut trace, row_offset, observe)?;
        g = residual;
        row_offset += 1;
        match reduced {
            Some(next) => current = next,
            None => break,
        }
    }

    let path_vertices = 2 * spec.n as usize;
    if g.vertex_count() != path_vertices || g.edge_count() != path_vertices - 1 {
        return Err(HexError::ScheduleBroken {
            detail: format!(
                "residual has {} vertices and {} edges, expected the path on {path_vertices}",
                g.vertex_count(),
                g.edge_count()
            ),
        });
    }
    let mut weights = Vec::with_capacity(path_vertices - 1);
    for i in 0..path_vertices - 1 {
        let w = g.weight(i, i + 1);
        if w.is_zero() {
            return Err(HexError::ScheduleBroken {
                detail: format!("residual is not a path: no edge {i}-{}", i + 1),
            });
        }
        weights.push(w);
    }
    let value = reduce::path_det(&weights);
    let labels = (2..=2 * spec.n + 1)
        .map(|col| format!("r{}c{col}", spec.m + 1))
        .collect();
    let step =
        ReductionStep::closed_form_path((0..path_vertices).collect(), value).with_labels(labels);
    trace.push(step);
    observe(&Graph::empty(0), trace.steps.last().expect("just pushed"));
    trace.finish();
    let det = trace.result.clone().expect("trace finished");
    Ok((det, trace))
}
