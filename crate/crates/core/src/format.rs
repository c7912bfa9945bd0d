//! Text interchange formats for graphs and reduction traces.
//!
//! The graph format is line-oriented and canonical (one byte sequence per
//! graph):
//!
//! ```text
//! # optional comment lines
//! graph <vertex_count>
//! <a> <b> <weight>
//! ...
//! ```
//!
//! Edges are sorted by `(min endpoint, max endpoint)`; weights print as an
//! optionally signed integer or `num/den` in lowest terms with `den > 1`
//! (never `/1`, never a decimal); lines end with a single LF and the output
//! carries a trailing newline. Comments and blank lines are ignored on
//! parse, except that the generator's metadata comment
//! `# hexgrid n=<n> m=<m> x=<x>` is recognised (never required) so a file
//! can be checked against the grid it claims to be.

use std::fmt;

use num_traits::Zero;

use crate::hexgrid::GridSpec;
use crate::reduce::ReductionTrace;
use crate::{Graph, Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    MalformedHeader,
    /// An edge line without exactly three fields.
    MalformedEdge,
    BadVertexIndex(String),
    MalformedWeight(String),
    ZeroWeight,
    DuplicateEdge { a: usize, b: usize },
    SelfLoop { v: usize },
}

/// A parse failure, always carrying the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            ParseErrorKind::MissingHeader => write!(f, "missing `graph <n>` header"),
            ParseErrorKind::MalformedHeader => write!(f, "malformed header"),
            ParseErrorKind::MalformedEdge => {
                write!(f, "expected `<a> <b> <weight>`")
            }
            ParseErrorKind::BadVertexIndex(token) => write!(f, "bad vertex index `{token}`"),
            ParseErrorKind::MalformedWeight(token) => write!(f, "malformed weight `{token}`"),
            ParseErrorKind::ZeroWeight => write!(f, "zero weight (absent edges are omitted)"),
            ParseErrorKind::DuplicateEdge { a, b } => write!(f, "duplicate edge {a}-{b}"),
            ParseErrorKind::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses a rational weight: `-3`, `7`, `5/3`, `-3/2`. The denominator must
/// be a positive integer; the value is normalized on construction.
fn parse_weight(token: &str) -> Option<Rational> {
    let (numer_str, denom_str) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let numer: Int = numer_str.parse().ok()?;
    let denom: Int = match denom_str {
        Some(d) if !d.starts_with('+') && !d.starts_with('-') => d.parse().ok()?,
        Some(_) => return None,
        None => Int::from(1),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// Parses the graph format. Comments (`#`) and blank lines are skipped; all
/// edge-list contract violations are reported with their line number.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut vertex_count: Option<usize> = None;
    let mut edges: Vec<(usize, usize, Rational)> = Vec::new();
    let mut seen: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    let mut line_count = 0;
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        line_count = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some(n) = vertex_count else {
            if fields.len() != 2 || fields[0] != "graph" {
                return Err(err(line, ParseErrorKind::MalformedHeader));
            }
            let count = fields[1]
                .parse()
                .map_err(|_| err(line, ParseErrorKind::MalformedHeader))?;
            vertex_count = Some(count);
            continue;
        };
        if fields.len() != 3 {
            return Err(err(line, ParseErrorKind::MalformedEdge));
        }
        let parse_index = |token: &str| -> Result<usize, ParseError> {
            let index: usize = token
                .parse()
                .map_err(|_| err(line, ParseErrorKind::BadVertexIndex(token.to_string())))?;
            if index >= n {
                return Err(err(line, ParseErrorKind::BadVertexIndex(token.to_string())));
            }
            Ok(index)
        };
        let a = parse_index(fields[0])?;
        let b = parse_index(fields[1])?;
        if a == b {
            return Err(err(line, ParseErrorKind::SelfLoop { v: a }));
        }
        let w = parse_weight(fields[2])
            .ok_or_else(|| err(line, ParseErrorKind::MalformedWeight(fields[2].to_string())))?;
        if w.is_zero() {
            return Err(err(line, ParseErrorKind::ZeroWeight));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(err(line, ParseErrorKind::DuplicateEdge { a, b }));
        }
        edges.push((a, b, w));
    }
    let Some(n) = vertex_count else {
        return Err(err(line_count + 1, ParseErrorKind::MissingHeader));
    };
    Ok(Graph::new(n, edges).expect("edge contract already validated"))
}

/// Canonical serialization: header, then edges in `(min, max)` order, LF
/// endings, trailing newline.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for (a, b, w) in g.edges() {
        out.push_str(&format!("{a} {b} {w}\n"));
    }
    out
}

/// The generator's metadata comment for a grid file.
pub fn hexgrid_meta_line(spec: &GridSpec) -> String {
    format!("# hexgrid n={} m={} x={}\n", spec.n, spec.m, spec.x)
}

/// Scans comment lines for the grid metadata comment; `x` defaults to zero
/// when the comment omits it.
pub fn find_hexgrid_meta(text: &str) -> Option<GridSpec> {
    for raw in text.lines() {
        let content = raw.trim();
        let Some(comment) = content.strip_prefix('#') else {
            continue;
        };
        let mut fields = comment.split_whitespace();
        if fields.next() != Some("hexgrid") {
            continue;
        }
        let (mut n, mut m, mut x) = (None, None, Some(0));
        for field in fields {
            let (key, value) = field.split_once('=')?;
            let Ok(value) = value.parse::<u64>() else {
                return None;
            };
            match key {
                "n" => n = Some(value),
                "m" => m = Some(value),
                "x" => x = Some(value),
                _ => return None,
            }
        }
        return Some(GridSpec {
            n: n?,
            m: m?,
            x: x?,
        });
    }
    None
}

/// One line per step (index, kind, actor labels, the combine coefficient
/// when present, the step factor and the running accumulated value), then a
/// final `det <value>` line once the trace is complete. Actors print as the
/// grid coordinates the producer attached, or as raw indices without them.
pub fn serialize_trace(trace: &ReductionTrace<Rational>) -> String {
    let mut out = String::new();
    let mut running = Rational::from_integer(Int::from(1));
    for (index, step) in trace.steps.iter().enumerate() {
        running *= &step.factor;
        let actors = match &step.actor_labels {
            Some(labels) => labels.clone(),
            None => step.actors.iter().map(usize::to_string).collect(),
        };
        out.push_str(&format!("{index} {} {}", step.kind.name(), actors.join(" ")));
        if let Some(c) = &step.coefficient {
            out.push_str(&format!(" coeff={c}"));
        }
        out.push_str(&format!(" factor={} acc={running}\n", step.factor));
    }
    if let Some(result) = &trace.result {
        out.push_str(&format!("det {result}\n"));
    }
    out
}
