//! Graph transformations that preserve the Leavitt path algebra up to
//! isomorphism, and the pipeline that removes sources from a sinkless graph.
//!
//! Generated names are fixed so traces stay replayable:
//!
//! | move                | new vertices         | new edges                      |
//! |---------------------|----------------------|--------------------------------|
//! | `expand_hereditary` | `e1.e2…` (a path)    | `ov_e1.e2…`                    |
//! | `attach_head`       | `v.h1 … v.hn`        | `v.e1 … v.en`                  |
//! | `subdivide_edge`    | `e.v1 … e.vn`        | `e.e1 … e.e(n+1)`              |
//! | `attach_sources`    | `v.s1 … v.sn`        | `v.f1 … v.fn`                  |

mod desourcify;
mod families;
mod trace;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, GraphBuilder, PathSeq, VertexId, VertexSet};

pub use desourcify::desourcify;
pub use families::{expansion_family, subdivision_family};
pub use trace::{MoveKind, MoveRecord, MoveTrace};

/// Hypotheses under which expanding along `H` preserves the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionPreconditions {
    pub hereditary: bool,
    /// The graph on `E⁰ \ H` with edges `r⁻¹(E⁰ \ H)` is finite and acyclic.
    pub complement_acyclic: bool,
    /// Every vertex outside `H` has a path into `H`.
    pub all_reach_h: bool,
    /// `s⁻¹(E⁰ \ H) ∩ r⁻¹(H)` is finite; always true for finite graphs.
    pub boundary_finite: bool,
}

impl ExpansionPreconditions {
    pub fn holds(&self) -> bool {
        self.hereditary && self.complement_acyclic && self.all_reach_h && self.boundary_finite
    }
}

pub fn thm1_preconditions(g: &Graph, h: &VertexSet) -> ExpansionPreconditions {
    let outside: Vec<VertexId> = g.vertices().filter(|v| !h.contains(v)).collect();
    let reaching = vertices_reaching(g, h);
    ExpansionPreconditions {
        hereditary: g.is_hereditary(h),
        complement_acyclic: g.complement_graph(h).is_acyclic(),
        all_reach_h: outside.iter().all(|v| reaching.contains(v)),
        boundary_finite: true,
    }
}

/// Vertices outside `h` with a path into `h` that stays outside until its
/// last edge.
fn vertices_reaching(g: &Graph, h: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::new();
    let mut stack: Vec<VertexId> = Vec::new();
    for &w in h {
        for &e in g.in_edges(w) {
            let s = g.source(e);
            if !h.contains(&s) && seen.insert(s) {
                stack.push(s);
            }
        }
    }
    while let Some(v) = stack.pop() {
        for &e in g.in_edges(v) {
            let s = g.source(e);
            if !h.contains(&s) && seen.insert(s) {
                stack.push(s);
            }
        }
    }
    seen
}

/// `F(H)`: paths `e₁…eₙ` with `s(eₙ) ∉ H` and `r(eₙ) ∈ H`, sorted by
/// display name.
pub fn boundary_paths(g: &Graph, h: &VertexSet) -> Result<Vec<PathSeq>> {
    g.check_hereditary(h)?;
    let reaching = vertices_reaching(g, h);
    let feeding = g.induced(&reaching);
    if !feeding.is_acyclic() {
        let culprit = reaching.iter().next().expect("a cycle needs a vertex");
        return Err(Error::InfinitePathSet(g.vertex_name(*culprit).to_string()));
    }
    // Every vertex of `α` other than `r(α)` lies outside `H`, since `H` is
    // hereditary; so extend backwards through the complement only.
    let mut out = Vec::new();
    let mut stack: Vec<PathSeq> = Vec::new();
    for e in g.edges() {
        if h.contains(&g.range(e)) && !h.contains(&g.source(e)) {
            stack.push(PathSeq::edge(g, e));
        }
    }
    while let Some(p) = stack.pop() {
        for &e in g.in_edges(p.source()) {
            stack.push(PathSeq::edge(g, e).concat(&p).expect("composes"));
        }
        out.push(p);
    }
    out.sort_by_key(|p| p.display(g));
    Ok(out)
}

/// The expansion `E(H)`: keeps `H` and `s⁻¹(H)`, turns each `α ∈ F(H)` into
/// a vertex with a single edge `ov_α` to `r(α)`.
pub fn expand_hereditary(g: &Graph, h: &VertexSet) -> Result<Graph> {
    if h.is_empty() && g.vertex_count() > 0 {
        return Err(Error::EmptySet);
    }
    let paths = boundary_paths(g, h)?;
    let mut b = GraphBuilder::new();
    for v in g.vertices().filter(|v| h.contains(v)) {
        b.add_vertex(g.vertex_name(v))?;
    }
    let names: Vec<String> = paths.iter().map(|p| p.display(g)).collect();
    for name in &names {
        b.add_vertex(name.as_str())?;
    }
    for e in g.edges().filter(|&e| h.contains(&g.source(e))) {
        b.add_edge(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)))?;
    }
    for (p, name) in paths.iter().zip(&names) {
        b.add_edge(format!("ov_{name}"), name, g.vertex_name(p.range()))?;
    }
    Ok(b.build())
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroLength)
    } else {
        Ok(())
    }
}

fn push_head(b: &mut GraphBuilder, v0: &str, n: usize) -> Result<()> {
    for i in 1..=n {
        b.add_vertex(format!("{v0}.h{i}"))?;
    }
    for i in 1..=n {
        let target = if i == 1 { v0.to_string() } else { format!("{v0}.h{}", i - 1) };
        b.add_edge(format!("{v0}.e{i}"), &format!("{v0}.h{i}"), &target)?;
    }
    Ok(())
}

/// `E(v₀, n)`: a chain `v₀.hn → … → v₀.h1 → v₀`.
pub fn attach_head(g: &Graph, v0: &str, n: usize) -> Result<Graph> {
    g.require_vertex(v0)?;
    check_length(n)?;
    let mut b = g.to_builder();
    push_head(&mut b, v0, n)?;
    Ok(b.build())
}

/// `E(e₀, n)`: replaces `e₀` by a path of `n + 1` edges through `n` new
/// vertices. The new edges take the old edge's slot in the edge order.
pub fn subdivide_edge(g: &Graph, e0: &str, n: usize) -> Result<Graph> {
    let target = g.require_edge(e0)?;
    check_length(n)?;
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.vertex_name(v))?;
    }
    for i in 1..=n {
        b.add_vertex(format!("{e0}.v{i}"))?;
    }
    let src = g.vertex_name(g.source(target)).to_string();
    let dst = g.vertex_name(g.range(target)).to_string();
    for e in g.edges() {
        if e == target {
            for i in 1..=n + 1 {
                let s = if i == n + 1 { src.clone() } else { format!("{e0}.v{i}") };
                let r = if i == 1 { dst.clone() } else { format!("{e0}.v{}", i - 1) };
                b.add_edge(format!("{e0}.e{i}"), &s, &r)?;
            }
        } else {
            b.add_edge(g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e)))?;
        }
    }
    Ok(b.build())
}

/// `E′(v₀, n)`: `n` new sources, each with one edge into `v₀`.
pub fn attach_sources(g: &Graph, v0: &str, n: usize) -> Result<Graph> {
    g.require_vertex(v0)?;
    check_length(n)?;
    let mut b = g.to_builder();
    for i in 1..=n {
        b.add_vertex(format!("{v0}.s{i}"))?;
    }
    for i in 1..=n {
        b.add_edge(format!("{v0}.f{i}"), &format!("{v0}.s{i}"), v0)?;
    }
    Ok(b.build())
}

/// `E∖v`: drops the source `v` and every edge it emits.
pub fn eliminate_source(g: &Graph, v: &str) -> Result<Graph> {
    let id = g.require_vertex(v)?;
    if !g.is_source(id) {
        return Err(Error::NotASource(v.to_string()));
    }
    let keep: VertexSet = g.vertices().filter(|&u| u != id).collect();
    Ok(g.induced(&keep))
}

/// Sources whose only edge goes to `v0`.
pub fn pendant_sources(g: &Graph, v0: VertexId) -> Vec<VertexId> {
    g.in_edges(v0)
        .iter()
        .map(|&e| g.source(e))
        .filter(|&u| u != v0 && g.is_source(u) && g.out_edges(u).len() == 1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Trades the `n` pendant sources at `v0` for a head of length `n`; the two
/// graphs share the base obtained by deleting those sources, and are related
/// as `E′(v₀, n)` and `E(v₀, n)`.
pub fn sources_to_head(g: &Graph, v0: &str, n: usize) -> Result<Graph> {
    let id = g.require_vertex(v0)?;
    check_length(n)?;
    let pendant = pendant_sources(g, id);
    if pendant.len() != n {
        return Err(Error::PendantSourceCount { vertex: v0.to_string(), found: pendant.len(), expected: n });
    }
    let keep: VertexSet = g.vertices().filter(|u| !pendant.contains(u)).collect();
    attach_head(&g.induced(&keep), v0, n)
}

/// Vertices and edges of the canonical head of length `n` at `v`, checked
/// for shape: each head vertex emits only its chain edge and receives only
/// the next one.
fn canonical_head(g: &Graph, v: &str, n: usize) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
    let malformed = || Error::MalformedHead { vertex: v.to_string(), length: n };
    let mut vs = Vec::with_capacity(n);
    let mut es = Vec::with_capacity(n);
    for i in 1..=n {
        let hv = g.vertex(&format!("{v}.h{i}")).ok_or_else(malformed)?;
        let he = g.edge(&format!("{v}.e{i}")).ok_or_else(malformed)?;
        let expected_range = if i == 1 {
            g.require_vertex(v)?
        } else {
            vs[i - 2]
        };
        if g.source(he) != hv || g.range(he) != expected_range || g.out_edges(hv).len() != 1 {
            return Err(malformed());
        }
        vs.push(hv);
        es.push(he);
    }
    for (i, &hv) in vs.iter().enumerate() {
        let ins = g.in_edges(hv);
        let ok = if i + 1 == n {
            ins.is_empty()
        } else {
            ins.len() == 1 && ins[0] == es[i + 1]
        };
        if !ok {
            return Err(malformed());
        }
    }
    Ok((vs, es))
}

/// Absorbs the head of length `n` at `r(e₀)` by subdividing `e₀` `n` times;
/// relates `E(r(e₀), n)` and `E(e₀, n)` over a common base.
pub fn head_to_subdivision(g: &Graph, e0: &str, n: usize) -> Result<Graph> {
    let e = g.require_edge(e0)?;
    check_length(n)?;
    let v = g.vertex_name(g.range(e)).to_string();
    let (head_vertices, head_edges) = canonical_head(g, &v, n)?;
    if head_edges.contains(&e) {
        return Err(Error::MalformedHead { vertex: v, length: n });
    }
    let keep: VertexSet = g.vertices().filter(|u| !head_vertices.contains(u)).collect();
    subdivide_edge(&g.induced(&keep), e0, n)
}

/// `M_nE`: a head of length `n − 1` at every vertex.
pub fn matrix_graph(g: &Graph, n: usize) -> Result<Graph> {
    check_length(n)?;
    if n == 1 {
        return Ok(g.clone());
    }
    let mut b = g.to_builder();
    for v in g.vertices() {
        push_head(&mut b, g.vertex_name(v), n - 1)?;
    }
    Ok(b.build())
}

/// Finite piece of the stabilization `SE` keeping heads of length `k`;
/// equal to `M_{k+1}E`.
pub fn stabilization_fragment(g: &Graph, k: usize) -> Result<Graph> {
    matrix_graph(g, k + 1)
}
