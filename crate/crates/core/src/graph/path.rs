use super::{EdgeId, Graph, VertexId, VertexSet};
use crate::error::{Error, Result};

/// A finite path: either a vertex (length 0) or composable edges `e₁…eₙ`.
///
/// The derived ordering (source, range, edges) is what keeps symbolic
/// elements in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathSeq {
    start: VertexId,
    end: VertexId,
    edges: Vec<EdgeId>,
}

impl PathSeq {
    pub fn vertex(v: VertexId) -> PathSeq {
        PathSeq { start: v, end: v, edges: Vec::new() }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> PathSeq {
        PathSeq { start: g.source(e), end: g.range(e), edges: vec![e] }
    }

    /// Checks `r(eᵢ) = s(eᵢ₊₁)`; an empty edge list is rejected since the
    /// base vertex would be unknown.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Option<PathSeq> {
        let first = *edges.first()?;
        let mut end = g.range(first);
        for &e in &edges[1..] {
            if g.source(e) != end {
                return None;
            }
            end = g.range(e);
        }
        Some(PathSeq { start: g.source(first), end, edges })
    }

    pub fn from_edge_names(g: &Graph, names: &[&str]) -> Result<PathSeq> {
        let ids = names
            .iter()
            .map(|n| g.require_edge(n))
            .collect::<Result<Vec<_>>>()?;
        PathSeq::from_edges(g, ids).ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("edges `{}` do not form a path", names.join(".")),
        })
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self) -> VertexId {
        self.end
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_vertex()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `μ⁰`: the vertices visited, source first.
    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        std::iter::once(self.start)
            .chain(self.edges.iter().map(|&e| g.range(e)))
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        !self.edges.is_empty() && self.start == self.end
    }

    /// `self` followed by `next`, if `r(self) = s(next)`.
    pub fn concat(&self, next: &PathSeq) -> Option<PathSeq> {
        if self.end != next.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Some(PathSeq { start: self.start, end: next.end, edges })
    }

    /// If `prefix` is an initial segment of `self`, the remainder.
    pub fn strip_prefix(&self, prefix: &PathSeq) -> Option<PathSeq> {
        if self.start != prefix.start || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(PathSeq {
            start: prefix.end,
            end: self.end,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }

    /// Drops the last edge; `None` for a vertex.
    pub(crate) fn split_last(&self, g: &Graph) -> Option<(PathSeq, EdgeId)> {
        let (&last, rest) = self.edges.split_last()?;
        let end = g.source(last);
        Some((PathSeq { start: self.start, end, edges: rest.to_vec() }, last))
    }

    /// Appends an edge leaving `r(self)`.
    pub(crate) fn push(&self, g: &Graph, e: EdgeId) -> PathSeq {
        debug_assert_eq!(g.source(e), self.end);
        let mut edges = self.edges.clone();
        edges.push(e);
        PathSeq { start: self.start, end: g.range(e), edges }
    }

    /// Vertex name for length 0, otherwise edge names joined by `.`.
    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.start).to_string()
        } else {
            self.edges
                .iter()
                .map(|&e| g.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}
