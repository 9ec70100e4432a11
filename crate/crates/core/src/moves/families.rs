//! Cuntz-Krieger families witnessing that two moves preserve the algebra.

use num_rational::BigRational;
use num_traits::One;

use super::{attach_head, boundary_paths, expand_hereditary, subdivide_edge};
use crate::error::Result;
use crate::graph::{Graph, PathSeq, VertexSet};
use crate::lpa::{Assignment, LpaElement};

/// An `E(H)`-family inside `L(E)`: `Q_v = v` on `H`, `Q_α = αα*` for
/// `α ∈ F(H)`, `T_e = e` on `s⁻¹(H)` and `T_{ov_α} = α`.
///
/// Returns `E(H)` and the assignment.
pub fn expansion_family(g: &Graph, h: &VertexSet) -> Result<(Graph, Assignment)> {
    let target = expand_hereditary(g, h)?;
    let mut a = Assignment::default();
    for &v in h {
        a.vertices.insert(g.vertex_name(v).to_string(), LpaElement::vertex(v));
    }
    for e in g.edges().filter(|e| h.contains(&g.source(*e))) {
        a.edges.insert(g.edge_name(e).to_string(), LpaElement::edge(g, e));
    }
    for p in boundary_paths(g, h)? {
        let name = p.display(g);
        let rp = PathSeq::vertex(p.range());
        a.vertices.insert(name.clone(), LpaElement::monomial(BigRational::one(), p.clone(), p.clone()));
        a.edges.insert(format!("ov_{name}"), LpaElement::monomial(BigRational::one(), p, rp));
    }
    Ok((target, a))
}

/// An `E(r(e₀), n)`-family inside `L(E(e₀, n))`: generators map to their
/// namesakes (head vertex `i` to subdivision vertex `i`, head edge `i` to
/// subdivision edge `i`) and `e₀` maps to `e_{n+1}e_n⋯e_1`.
///
/// Returns the target `E(r(e₀), n)`, the host `E(e₀, n)` and the assignment.
pub fn subdivision_family(g: &Graph, e0: &str, n: usize) -> Result<(Graph, Graph, Assignment)> {
    let edge = g.require_edge(e0)?;
    let v0 = g.vertex_name(g.range(edge)).to_string();
    let target = attach_head(g, &v0, n)?;
    let host = subdivide_edge(g, e0, n)?;
    let mut a = Assignment::default();
    for v in g.vertices() {
        let name = g.vertex_name(v);
        a.vertices.insert(name.to_string(), LpaElement::vertex(host.require_vertex(name)?));
    }
    for i in 1..=n {
        let hv = host.require_vertex(&format!("{e0}.v{i}"))?;
        let he = host.require_edge(&format!("{e0}.e{i}"))?;
        a.vertices.insert(format!("{v0}.h{i}"), LpaElement::vertex(hv));
        a.edges.insert(format!("{v0}.e{i}"), LpaElement::edge(&host, he));
    }
    for e in g.edges().filter(|&e| e != edge) {
        let name = g.edge_name(e);
        a.edges.insert(name.to_string(), LpaElement::edge(&host, host.require_edge(name)?));
    }
    let names: Vec<String> = (1..=n + 1).rev().map(|i| format!("{e0}.e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let chain = PathSeq::from_edge_names(&host, &refs)?;
    a.edges.insert(e0.to_string(), LpaElement::path(chain));
    Ok((target, host, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::lpa::verify_ck_family;
    use crate::testing::arb_graph;
    use proptest::prelude::*;

    #[test]
    fn expansion_family_of_first_example() {
        let g = tailed_cycle();
        let h = g.resolve_vertices(["1", "2", "3"]).unwrap();
        let (target, a) = expansion_family(&g, &h).unwrap();
        assert_eq!(target.vertex_count(), 7);
        let report = verify_ck_family(&target, &a, &g).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn subdivision_family_of_alpha() {
        let g = triangle();
        let (target, host, a) = subdivision_family(&g, "alpha", 3).unwrap();
        assert_eq!((target.vertex_count(), target.edge_count()), (6, 6));
        assert_eq!((host.vertex_count(), host.edge_count()), (6, 6));
        let report = verify_ck_family(&target, &a, &host).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn truncated_chain_is_caught() {
        let g = triangle();
        let (target, host, mut a) = subdivision_family(&g, "alpha", 2).unwrap();
        a.edges.insert("alpha".into(), LpaElement::edge(&host, host.require_edge("alpha.e1").unwrap()));
        let report = verify_ck_family(&target, &a, &host).unwrap();
        // `alpha.e1` starts at a subdivision vertex and already images `u.e1`.
        for name in ["source(alpha)", "ck1(alpha,u.e1)"] {
            assert!(report.failures.contains(&name.to_string()), "{:?}", report.failures);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn subdivision_families_verify(g in arb_graph(4, 6), pick in 0usize..6, n in 1usize..3) {
            prop_assume!(g.edge_count() > 0);
            let e = g.edges().nth(pick % g.edge_count()).unwrap();
            let (target, host, a) = subdivision_family(&g, g.edge_name(e), n).unwrap();
            prop_assert!(verify_ck_family(&target, &a, &host).unwrap().passed());
        }

        #[test]
        fn expansion_families_verify(g in arb_graph(5, 7), raw in proptest::collection::vec(0usize..5, 1..3)) {
            let seed: VertexSet = raw.iter().map(|&i| crate::graph::VertexId(i % g.vertex_count())).collect();
            let h = g.hereditary_closure(&seed);
            if let Ok((target, a)) = expansion_family(&g, &h) {
                prop_assert!(verify_ck_family(&target, &a, &g).unwrap().passed());
            }
        }
    }
}
