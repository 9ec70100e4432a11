//! T-corner graphs `E(T)` and the Cuntz-Krieger family realizing
//! `L(E(T)) ≅ P_X L(E) P_X` inside `L(E)`.

mod forest;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

pub use forest::{build_forest, Forest};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId, VertexSet};
use crate::lpa::{Assignment, LpaElement, WeightMap};
use crate::moves::{matrix_graph, stabilization_fragment};

/// Forest vertices kept in `E(T)`: those that are sinks or emit an edge
/// outside `T¹`.
pub fn corner_vertices(g: &Graph, t: &Forest) -> Vec<VertexId> {
    t.vertices()
        .iter()
        .copied()
        .filter(|&v| {
            let out = g.out_edges(v);
            out.is_empty() || !out.iter().all(|&e| t.contains_edge(e))
        })
        .collect()
}

/// `E(T)`: one edge `e_u` for each `e ∈ s⁻¹(T⁰) \ T¹` and each kept vertex
/// `u` with `r(e) ≥_T u`, from `s(e)` to `u`.
pub fn t_corner(g: &Graph, t: &Forest) -> Result<Graph> {
    let kept = corner_vertices(g, t);
    let mut b = GraphBuilder::new();
    for &v in &kept {
        b.add_vertex(g.vertex_name(v))?;
    }
    for e in g.edges() {
        if t.contains_edge(e) || !t.vertices().contains(&g.source(e)) {
            continue;
        }
        for &u in &kept {
            if t.t_reaches(g, g.range(e), u) {
                let name = format!("{}_{}", g.edge_name(e), g.vertex_name(u));
                b.add_edge(name, g.vertex_name(g.source(e)), g.vertex_name(u))?;
            }
        }
    }
    Ok(b.build())
}

fn tau_element(g: &Graph, t: &Forest, v: VertexId) -> Result<LpaElement> {
    Ok(LpaElement::path(t.tau(g, v)?))
}

/// `Q_v = τ(v)τ(v)* − Σ_{e ∈ T¹ ∩ s⁻¹(v)} τ(v)ee*τ(v)*`.
pub fn q_element(g: &Graph, t: &Forest, v: VertexId) -> Result<LpaElement> {
    let tau = t.tau(g, v)?;
    let mut q = LpaElement::monomial(BigRational::one(), tau.clone(), tau.clone());
    for &e in g.out_edges(v) {
        if t.contains_edge(e) {
            let te = tau.push(g, e);
            q = &q - &LpaElement::monomial(BigRational::one(), te.clone(), te);
        }
    }
    Ok(q)
}

/// The images `Q_v` and `T_{e_u} = τ(s(e))·e·τ(r(e))*·Q_u`, keyed by the
/// generator names of [`t_corner`].
pub fn corner_family(g: &Graph, t: &Forest) -> Result<(Graph, Assignment)> {
    let corner = t_corner(g, t)?;
    let mut a = Assignment::default();
    let mut q = BTreeMap::new();
    for v in corner.vertices() {
        let host = g.require_vertex(corner.vertex_name(v))?;
        let qv = q_element(g, t, host)?;
        q.insert(host, qv.clone());
        a.vertices.insert(corner.vertex_name(v).to_string(), qv);
    }
    for e in g.edges() {
        if t.contains_edge(e) || !t.vertices().contains(&g.source(e)) {
            continue;
        }
        let lead = &tau_element(g, t, g.source(e))? * &LpaElement::edge(g, e);
        let body = &lead * &tau_element(g, t, g.range(e))?.star();
        for (&u, qu) in &q {
            if t.t_reaches(g, g.range(e), u) {
                let name = format!("{}_{}", g.edge_name(e), g.vertex_name(u));
                a.edges.insert(name, &body * qu);
            }
        }
    }
    Ok((corner, a))
}

/// `w(e) = l(τ(r(e))) − l(τ(s(e))) + 1` for `e ∉ T¹` with both ends in
/// `T⁰`, and 1 otherwise.
pub fn corner_weights(g: &Graph, t: &Forest) -> Result<WeightMap> {
    let mut w = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (s, r) = (g.source(e), g.range(e));
        if !t.contains_edge(e) && t.vertices().contains(&s) && t.vertices().contains(&r) {
            let (ls, lr) = (t.tau(g, s)?.len() as i64, t.tau(g, r)?.len() as i64);
            w.push(lr - ls + 1);
        } else {
            w.push(1);
        }
    }
    Ok(WeightMap::from_vec(g, w))
}

/// The corner graph of a full idempotent `Σ m_v v` realized in `M_n E`,
/// with the T-corner computation when it applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullCorner {
    /// `g` with a head of length `m_v − 1` at every `v`.
    pub graph: Graph,
    /// `E(T)` for `X ⊊ (M_nE)⁰`; edges carry the `<e>_<u>` names.
    pub via_forest: Option<Graph>,
}

/// Realizes `Σ m_v v` as the vertex set `X = ⋃_v {v, v.h1, …, v.h(m_v−1)}`
/// of `M_n E`. `X` is hereditary, so the corner is the subgraph induced on
/// `X`; when `X` is proper, the T-corner is computed too and must agree up
/// to the renaming `e ↦ e_{r(e)}`.
pub fn full_idempotent_corner(g: &Graph, m: &BTreeMap<String, usize>, n: usize) -> Result<FullCorner> {
    if let Some(v) = g.sinks().next() {
        return Err(Error::HasSink(g.vertex_name(v).into()));
    }
    if let Some(v) = g.sources().next() {
        return Err(Error::HasSource(g.vertex_name(v).into()));
    }
    for name in m.keys() {
        g.require_vertex(name)?;
    }
    let mut mult = Vec::new();
    for v in g.vertices() {
        let name = g.vertex_name(v);
        match m.get(name) {
            Some(&k) if k >= 1 => mult.push((name, k)),
            _ => return Err(Error::ZeroMultiplicity(name.into())),
        }
    }
    let max = mult.iter().map(|&(_, k)| k).max().unwrap_or(1);
    if n < max {
        return Err(Error::MatrixTooSmall { n, max });
    }
    let amplified = matrix_graph(g, n)?;
    let mut x = VertexSet::new();
    for &(name, k) in &mult {
        x.insert(amplified.require_vertex(name)?);
        for i in 1..k {
            x.insert(amplified.require_vertex(&format!("{name}.h{i}"))?);
        }
    }
    let graph = amplified.induced(&x);
    let via_forest = if x.len() < amplified.vertex_count() {
        let corner = t_corner(&amplified, &build_forest(&amplified, &x)?)?;
        let mut renamed = GraphBuilder::new();
        for v in graph.vertices() {
            renamed.add_vertex(graph.vertex_name(v))?;
        }
        for e in graph.edges() {
            let r = graph.vertex_name(graph.range(e));
            renamed.add_edge(format!("{}_{r}", graph.edge_name(e)), graph.vertex_name(graph.source(e)), r)?;
        }
        if renamed.build() != corner {
            return Err(Error::Internal("T-corner of a hereditary set differs from the induced subgraph".into()));
        }
        Some(corner)
    } else {
        None
    };
    Ok(FullCorner { graph, via_forest })
}

fn corner_at_depth(g: &Graph, x: &[String], k: usize) -> Result<Graph> {
    let fragment = stabilization_fragment(g, k)?;
    let set = x
        .iter()
        .map(|name| fragment.vertex(name).ok_or_else(|| Error::BeyondFragment(name.clone())))
        .collect::<Result<VertexSet>>()?;
    t_corner(&fragment, &build_forest(&fragment, &set)?)
}

/// `E(T)` for roots `X` in the stabilization `SE`, computed in the depth-`k`
/// fragment and confirmed at depth `k + 1`.
///
/// When `X` is every vertex of the fragment it is still a proper subset of
/// `SE⁰`, so the computation moves one level deeper.
pub fn se_corner(g: &Graph, x: &[String], k: usize) -> Result<Graph> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let fragment = stabilization_fragment(g, k)?;
    let depth = if x.len() >= fragment.vertex_count() && x.iter().all(|n| fragment.vertex(n).is_some()) {
        k + 1
    } else {
        k
    };
    let corner = corner_at_depth(g, x, depth)?;
    if corner_at_depth(g, x, depth + 1)? != corner {
        return Err(Error::Internal(format!("corner changed between fragment depths {depth} and {}", depth + 1)));
    }
    Ok(corner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::ktheory::k0_data;
    use crate::lpa::{check_grading, verify_ck_family, Degree, Lpa};
    use crate::testing::arb_no_sink_graph;
    use proptest::prelude::*;

    fn forest(g: &Graph, roots: &[&str]) -> Forest {
        build_forest(g, &g.resolve_vertices(roots.iter().copied()).unwrap()).unwrap()
    }

    fn edge_list(g: &Graph) -> Vec<String> {
        g.edges()
            .map(|e| format!("{}:{}->{}", g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))))
            .collect()
    }

    #[test]
    fn bowtie_corner() {
        let g = bowtie();
        let c = t_corner(&g, &forest(&g, &["v2"])).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(
            edge_list(&c),
            ["gamma_v1:v1->v1", "gamma_v3:v1->v3", "beta_v1:v3->v1", "beta_v3:v3->v3"]
        );
        assert_eq!(c.vertex_name(VertexId(0)), "v1");
        assert_eq!(c.vertex_name(VertexId(1)), "v3");
    }

    #[test]
    fn second_example_corner_has_source() {
        let g = second_corner_example();
        let c = t_corner(&g, &forest(&g, &["2"])).unwrap();
        assert_eq!(edge_list(&c), ["delta_4:2->4", "gamma_4:4->4"]);
        assert!(c.is_source(c.vertex("2").unwrap()));
    }

    #[test]
    fn hereditary_roots_restrict() {
        let g = tailed_cycle();
        let h = g.resolve_vertices(["1", "2", "3"]).unwrap();
        let c = t_corner(&g, &build_forest(&g, &h).unwrap()).unwrap();
        let r = g.restrict(&h).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (r.vertex_count(), r.edge_count()));
        assert_eq!(edge_list(&c), ["a_3:1->3", "b_2:3->2", "c_1:2->1"]);
    }

    #[test]
    fn bowtie_family() {
        let g = bowtie();
        let t = forest(&g, &["v2"]);
        let (c, a) = corner_family(&g, &t).unwrap();
        let l = Lpa::new(&g);
        let p = |s: &str| l.parse_element(s).unwrap();
        assert_eq!(a.vertices["v1"], p("delta ; delta"));
        assert_eq!(a.vertices["v3"], p("alpha ; alpha"));
        assert!(l.equals(&a.edges["gamma_v1"], &p("delta.gamma.delta ; delta")));
        let report = verify_ck_family(&c, &a, &g).unwrap();
        assert!(report.passed(), "{:?}", report.failures);

        let w = corner_weights(&g, &t).unwrap();
        let name = |n: &str| g.edge(n).unwrap();
        assert_eq!(w.get(name("gamma")), 0);
        assert_eq!(w.get(name("beta")), 0);
        assert_eq!(w.get(name("alpha")), 1);
        assert_eq!(w.get(name("delta")), 1);
        assert_eq!(l.degree(&a.edges["gamma_v1"], &w), Degree::Homogeneous(1));
        assert!(check_grading(&c, &a, &g, &w).unwrap().passed());
    }

    #[test]
    fn second_example_family() {
        let g = second_corner_example();
        let t = forest(&g, &["2"]);
        let (c, a) = corner_family(&g, &t).unwrap();
        let l = Lpa::new(&g);
        assert_eq!(a.vertices["2"], l.parse_element("2 - alpha ; alpha").unwrap());
        assert!(verify_ck_family(&c, &a, &g).unwrap().passed());
        assert!(check_grading(&c, &a, &g, &corner_weights(&g, &t).unwrap()).unwrap().passed());
    }

    #[test]
    fn full_corners() {
        let g = single_loop();
        let ones: BTreeMap<String, usize> = [("v".to_string(), 1)].into();
        let fc = full_idempotent_corner(&g, &ones, 1).unwrap();
        assert_eq!(fc.graph, g);
        assert!(fc.via_forest.is_none());
        assert!(full_idempotent_corner(&g, &ones, 2).unwrap().via_forest.is_some());

        let three: BTreeMap<String, usize> = [("v".to_string(), 3)].into();
        let fc = full_idempotent_corner(&g, &three, 3).unwrap();
        assert_eq!((fc.graph.vertex_count(), fc.graph.edge_count()), (3, 3));
        assert!(fc.graph.is_source(fc.graph.vertex("v.h2").unwrap()));
        assert_eq!(k0_data(&fc.graph), k0_data(&g));

        assert_eq!(full_idempotent_corner(&g, &three, 2), Err(Error::MatrixTooSmall { n: 2, max: 3 }));
        let zero: BTreeMap<String, usize> = [("v".to_string(), 0)].into();
        assert_eq!(full_idempotent_corner(&g, &zero, 2), Err(Error::ZeroMultiplicity("v".into())));
        assert!(matches!(full_idempotent_corner(&line(), &ones, 1), Err(Error::HasSink(_))));
    }

    #[test]
    fn stabilized_corners() {
        let g = rose2();
        let rose_shape = |c: &Graph| {
            c.vertex_count() == 1 && c.edge_count() == 2 && c.edges().all(|e| c.source(e) == c.range(e))
        };
        assert!(rose_shape(&se_corner(&g, &["v".into()], 0).unwrap()));
        for k in 2..4 {
            assert!(rose_shape(&se_corner(&g, &["v.h2".into()], k).unwrap()));
        }
        let c = se_corner(&g, &["v".into(), "v.h1".into()], 1).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (2, 3));
        assert!(c.is_source(c.vertex("v.h1").unwrap()));
        assert_eq!(se_corner(&g, &["v.h3".into()], 2), Err(Error::BeyondFragment("v.h3".into())));
    }

    fn small_root_sets(g: &Graph) -> Vec<VertexSet> {
        let vs: Vec<VertexId> = g.vertices().collect();
        let mut out = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            out.push([a].into());
            for &b in &vs[i + 1..] {
                out.push([a, b].into());
            }
        }
        out.retain(|x: &VertexSet| x.len() < g.vertex_count());
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn corners_of_sinkless_graphs_have_no_sinks(g in arb_no_sink_graph(7, 5)) {
            for x in small_root_sets(&g) {
                let t = build_forest(&g, &x).unwrap();
                let c = t_corner(&g, &t).unwrap();
                prop_assert_eq!(c.sinks().count(), 0);
                if g.hs_closure(&x).len() == g.vertex_count() {
                    prop_assert_eq!(k0_data(&c), k0_data(&g));
                }
            }
        }

        #[test]
        fn corner_families_verify(g in arb_no_sink_graph(4, 3)) {
            for x in small_root_sets(&g) {
                let t = build_forest(&g, &x).unwrap();
                let (c, a) = corner_family(&g, &t).unwrap();
                let report = verify_ck_family(&c, &a, &g).unwrap();
                prop_assert!(report.passed(), "{:?}", report.failures);
                let w = corner_weights(&g, &t).unwrap();
                prop_assert!(check_grading(&c, &a, &g, &w).unwrap().passed());
            }
        }
    }
}
