use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, PathSeq, VertexId, VertexSet};

/// A directed forest `T` in a host graph with roots `X` spanning `H(X)`.
///
/// Every non-root vertex of `T⁰` has exactly one incoming `T`-edge (its
/// parent edge) and roots have none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    roots: VertexSet,
    vertices: VertexSet,
    edges: BTreeSet<EdgeId>,
    parent: BTreeMap<VertexId, EdgeId>,
}

impl Forest {
    /// Validates `edges` as a forest with root set `roots` and vertex set
    /// `H(roots)`, for `∅ ≠ roots ⊊ E⁰`.
    pub fn new(g: &Graph, roots: VertexSet, edges: BTreeSet<EdgeId>) -> Result<Forest> {
        if roots.is_empty() {
            return Err(Error::EmptySet);
        }
        if roots.len() == g.vertex_count() {
            return Err(Error::RootsNotProper);
        }
        let vertices = g.hereditary_closure(&roots);
        let invalid = |m: String| Err(Error::InvalidForest(m));
        let mut parent = BTreeMap::new();
        for &e in &edges {
            let (s, r) = (g.source(e), g.range(e));
            if !vertices.contains(&s) || !vertices.contains(&r) {
                return invalid(format!("edge `{}` leaves the hereditary closure of the roots", g.edge_name(e)));
            }
            if roots.contains(&r) {
                return invalid(format!("edge `{}` enters root `{}`", g.edge_name(e), g.vertex_name(r)));
            }
            if let Some(&other) = parent.get(&r) {
                return invalid(format!(
                    "edges `{}` and `{}` both enter `{}`",
                    g.edge_name(other),
                    g.edge_name(e),
                    g.vertex_name(r)
                ));
            }
            parent.insert(r, e);
        }
        if let Some(&v) = vertices.iter().find(|v| !roots.contains(v) && !parent.contains_key(v)) {
            return invalid(format!("`{}` is not reached from the roots", g.vertex_name(v)));
        }
        // Walking parents must end at a root; a longer walk means a cycle.
        for &v in &vertices {
            let mut cur = v;
            let mut steps = 0;
            while let Some(&e) = parent.get(&cur) {
                cur = g.source(e);
                steps += 1;
                if steps > vertices.len() {
                    return invalid(format!("forest edges form a cycle through `{}`", g.vertex_name(v)));
                }
            }
        }
        Ok(Forest { roots, vertices, edges, parent })
    }

    /// `T^r`.
    pub fn roots(&self) -> &VertexSet {
        &self.roots
    }

    /// `T⁰ = H(T^r)`.
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// `T¹`.
    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// `T^l`: vertices of `T⁰` emitting no `T`-edge.
    pub fn leaves(&self, g: &Graph) -> VertexSet {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| !g.out_edges(v).iter().any(|e| self.edges.contains(e)))
            .collect()
    }

    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent.get(&v).copied()
    }

    /// `τ(v)`: the unique `T`-path from a root to `v`.
    pub fn tau(&self, g: &Graph, v: VertexId) -> Result<PathSeq> {
        if !self.vertices.contains(&v) {
            return Err(Error::InvalidForest(format!("`{}` is not a forest vertex", g.vertex_name(v))));
        }
        let mut rev = Vec::new();
        let mut cur = v;
        while let Some(&e) = self.parent.get(&cur) {
            rev.push(e);
            cur = g.source(e);
        }
        rev.reverse();
        Ok(PathSeq::from_edges(g, rev).unwrap_or_else(|| PathSeq::vertex(v)))
    }

    /// `u ≥_T v`: a `T`-path, possibly of length 0, from `u` to `v`.
    pub fn t_reaches(&self, g: &Graph, u: VertexId, v: VertexId) -> bool {
        let mut cur = v;
        loop {
            if cur == u {
                return true;
            }
            match self.parent.get(&cur) {
                Some(&e) => cur = g.source(e),
                None => return false,
            }
        }
    }

    /// `root <v>` lines then `tedge <e>` lines, in host declaration order.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for &v in &self.roots {
            out.push_str(&format!("root {}\n", g.vertex_name(v)));
        }
        for &e in &self.edges {
            out.push_str(&format!("tedge {}\n", g.edge_name(e)));
        }
        out
    }

    pub fn parse(text: &str, g: &Graph) -> Result<Forest> {
        let mut roots = VertexSet::new();
        let mut edges = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| Error::Parse { line: i + 1, message: e.to_string() };
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["root", v] => {
                    roots.insert(g.require_vertex(v).map_err(at)?);
                }
                ["tedge", e] => {
                    edges.insert(g.require_edge(e).map_err(at)?);
                }
                _ => return Err(Error::Parse { line: i + 1, message: format!("unrecognized line `{line}`") }),
            }
        }
        Forest::new(g, roots, edges)
    }
}

/// Grows a forest from `x` over `H(x)`, each step taking the least named
/// edge from a reached vertex to an unreached one.
pub fn build_forest(g: &Graph, x: &VertexSet) -> Result<Forest> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    if x.len() == g.vertex_count() {
        return Err(Error::RootsNotProper);
    }
    let mut reached = x.clone();
    let mut edges = BTreeSet::new();
    loop {
        let next = reached
            .iter()
            .flat_map(|&v| g.out_edges(v).iter().copied())
            .filter(|&e| !reached.contains(&g.range(e)))
            .min_by_key(|&e| g.edge_name(e));
        let Some(e) = next else { break };
        edges.insert(e);
        reached.insert(g.range(e));
    }
    Forest::new(g, x.clone(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn names(g: &Graph, f: &Forest) -> Vec<String> {
        let mut v: Vec<String> = f.edges().iter().map(|&e| g.edge_name(e).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn bowtie_forest() {
        let g = bowtie();
        let f = build_forest(&g, &g.resolve_vertices(["v2"]).unwrap()).unwrap();
        assert_eq!(names(&g, &f), ["alpha", "delta"]);
        assert_eq!(f.vertices().len(), 3);
        let tau = |v: &str| f.tau(&g, g.vertex(v).unwrap()).unwrap().display(&g);
        assert_eq!(tau("v1"), "delta");
        assert_eq!(tau("v3"), "alpha");
        assert_eq!(tau("v2"), "v2");
        assert_eq!(g.sorted_names(&f.leaves(&g)), ["v1", "v3"]);
    }

    #[test]
    fn second_example_forest() {
        let g = second_corner_example();
        let f = build_forest(&g, &g.resolve_vertices(["2"]).unwrap()).unwrap();
        assert_eq!(names(&g, &f), ["alpha", "beta"]);
        assert_eq!(f.tau(&g, g.vertex("4").unwrap()).unwrap().display(&g), "alpha.beta");
    }

    #[test]
    fn hereditary_roots_give_empty_forest() {
        let g = tailed_cycle();
        let f = build_forest(&g, &g.resolve_vertices(["1", "2", "3"]).unwrap()).unwrap();
        assert!(f.edges().is_empty());
    }

    #[test]
    fn root_errors() {
        let g = bowtie();
        assert_eq!(build_forest(&g, &VertexSet::new()), Err(Error::EmptySet));
        assert_eq!(build_forest(&g, &g.all_vertices()), Err(Error::RootsNotProper));
        let h = second_corner_example();
        let f = build_forest(&h, &h.resolve_vertices(["2"]).unwrap()).unwrap();
        assert!(matches!(f.tau(&h, h.vertex("1").unwrap()), Err(Error::InvalidForest(_))));
    }

    #[test]
    fn invalid_forests() {
        let g = bowtie();
        let parse = |t: &str| Forest::parse(t, &g);
        assert!(parse("root v2\ntedge delta\ntedge alpha\n").is_ok());
        assert!(matches!(parse("root v2\ntedge delta\n"), Err(Error::InvalidForest(_))));
        assert!(matches!(parse("root v2\ntedge delta\ntedge alpha\ntedge gamma\n"), Err(Error::InvalidForest(_))));
        assert!(matches!(parse("root v2\ntedge delta\ntedge beta\n"), Err(Error::InvalidForest(_))));
        assert!(matches!(parse("root v9\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("leaf v1\n"), Err(Error::Parse { line: 1, .. })));
        let f = parse("root v2\ntedge alpha\ntedge delta\n").unwrap();
        assert_eq!(Forest::parse(&f.to_text(&g), &g).unwrap(), f);
    }
}
