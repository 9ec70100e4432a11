//! Finite directed multigraphs with named vertices and edges.
//!
//! A [`Graph`] is immutable once built. Vertices and edges keep their
//! declaration order, and every other module addresses them through the
//! dense [`VertexId`] / [`EdgeId`] handles handed out here.

mod closure;
mod cycles;
mod path;
mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub use closure::VertexClassification;
pub use path::PathSeq;

/// Index of a vertex in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) usize);

/// Index of an edge in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeData {
    name: String,
    source: VertexId,
    range: VertexId,
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'.')
}

/// Incremental construction of a [`Graph`]; validates names as they arrive.
#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if self.vertex_lookup.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = VertexId(self.vertices.len());
        self.vertex_lookup.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_edge(&mut self, name: impl Into<String>, source: &str, range: &str) -> Result<EdgeId> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if self.edge_lookup.contains_key(&name) {
            return Err(Error::DuplicateEdge(name));
        }
        let source = *self
            .vertex_lookup
            .get(source)
            .ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
        let range = *self
            .vertex_lookup
            .get(range)
            .ok_or_else(|| Error::UnknownVertex(range.to_string()))?;
        let id = EdgeId(self.edges.len());
        self.edge_lookup.insert(name.clone(), id);
        self.edges.push(EdgeData { name, source, range });
        Ok(id)
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vertex_lookup.contains_key(name)
    }

    pub fn build(self) -> Graph {
        let n = self.vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.range.0].push(EdgeId(i));
        }
        Graph {
            vertices: self.vertices,
            edges: self.edges,
            vertex_lookup: self.vertex_lookup,
            edge_lookup: self.edge_lookup,
            out_edges,
            in_edges,
        }
    }
}

impl Graph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    pub fn from_parts<V, E, S>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v)?;
        }
        for (name, s, r) in edges {
            b.add_edge(name.as_ref(), s.as_ref(), r.as_ref())?;
        }
        Ok(b.build())
    }

    pub fn empty() -> Graph {
        GraphBuilder::new().build()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    /// `s⁻¹(v)` in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r⁻¹(v)` in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn require_edge(&self, name: &str) -> Result<EdgeId> {
        self.edge(name).ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn resolve_vertices<I, S>(&self, names: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| self.require_vertex(n.as_ref()))
            .collect()
    }

    /// Vertex names of `set`, sorted lexicographically.
    pub fn sorted_names(&self, set: &VertexSet) -> Vec<String> {
        let mut names: Vec<String> = set.iter().map(|&v| self.vertex_name(v).to_string()).collect();
        names.sort();
        names
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v.0].is_empty()
    }

    /// For a finite graph a vertex is regular exactly when it is not a sink.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn sinks(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.is_sink(v))
    }

    pub fn sources(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.is_source(v))
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.out_edges(v).iter().any(|&e| self.range(e) == v)
    }

    /// Subgraph on `keep` containing every edge with both endpoints in `keep`.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut b = GraphBuilder::new();
        for v in self.vertices().filter(|v| keep.contains(v)) {
            b.add_vertex(self.vertex_name(v)).expect("names already unique");
        }
        for e in self.edges() {
            let (s, r) = (self.source(e), self.range(e));
            if keep.contains(&s) && keep.contains(&r) {
                b.add_edge(self.edge_name(e), self.vertex_name(s), self.vertex_name(r))
                    .expect("names already unique");
            }
        }
        b.build()
    }

    /// Copy of the graph as a builder, for moves that only add things.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            vertex_lookup: self.vertex_lookup.clone(),
            edge_lookup: self.edge_lookup.clone(),
        }
    }

    /// 64-bit FNV-1a of the canonical serialization.
    pub fn fingerprint(&self) -> u64 {
        fnv1a(self.to_text().as_bytes())
    }

    pub fn fingerprint_hex(&self) -> String {
        format!("{:016x}", self.fingerprint())
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes.iter().fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn tailed_cycle() -> Graph {
        Graph::from_parts(
            ["1", "2", "3", "4", "5"],
            [
                ("g1", "5", "4"),
                ("f1", "4", "1"),
                ("f2", "4", "1"),
                ("a", "1", "3"),
                ("b", "3", "2"),
                ("c", "2", "1"),
            ],
        )
        .unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::from_parts(
            ["u", "v", "w"],
            [("alpha", "v", "u"), ("beta", "u", "w"), ("gamma", "w", "v")],
        )
        .unwrap()
    }

    pub fn bowtie() -> Graph {
        Graph::from_parts(
            ["v1", "v2", "v3"],
            [
                ("gamma", "v1", "v2"),
                ("delta", "v2", "v1"),
                ("alpha", "v2", "v3"),
                ("beta", "v3", "v2"),
            ],
        )
        .unwrap()
    }

    pub fn second_corner_example() -> Graph {
        Graph::from_parts(
            ["1", "2", "3", "4"],
            [
                ("l1", "1", "1"),
                ("e12", "1", "2"),
                ("alpha", "2", "3"),
                ("delta", "2", "4"),
                ("beta", "3", "4"),
                ("gamma", "4", "4"),
            ],
        )
        .unwrap()
    }

    pub fn line() -> Graph {
        Graph::from_parts(["1", "2"], [("x", "1", "2")]).unwrap()
    }

    pub fn single_loop() -> Graph {
        Graph::from_parts(["v"], [("e", "v", "v")]).unwrap()
    }

    pub fn rose2() -> Graph {
        Graph::from_parts(["v"], [("e", "v", "v"), ("f", "v", "v")]).unwrap()
    }

    pub fn three_cycle() -> Graph {
        Graph::from_parts(
            ["v", "u", "w"],
            [("x", "v", "u"), ("y", "u", "w"), ("z", "w", "v")],
        )
        .unwrap()
    }

    pub fn two_loops() -> Graph {
        Graph::from_parts(["p", "q"], [("lp", "p", "p"), ("lq", "q", "q")]).unwrap()
    }
}
