use std::collections::VecDeque;

use super::{Graph, GraphBuilder, VertexId, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassification {
    pub sinks: VertexSet,
    pub sources: VertexSet,
    pub regular: VertexSet,
    pub singular: VertexSet,
}

impl Graph {
    pub fn classify(&self) -> VertexClassification {
        let sinks: VertexSet = self.sinks().collect();
        let sources: VertexSet = self.sources().collect();
        let regular: VertexSet = self.vertices().filter(|&v| self.is_regular(v)).collect();
        let singular = sinks.clone();
        VertexClassification { sinks, sources, regular, singular }
    }

    /// Whether a path (possibly of length 0) runs from `v` to `w`.
    pub fn reaches(&self, v: VertexId, w: VertexId) -> bool {
        self.forward_closure(std::iter::once(v)).contains(&w)
    }

    pub fn reaches_by_name(&self, v: &str, w: &str) -> Result<bool> {
        Ok(self.reaches(self.require_vertex(v)?, self.require_vertex(w)?))
    }

    fn forward_closure(&self, start: impl IntoIterator<Item = VertexId>) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for v in start {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &e in self.out_edges(v) {
                let w = self.range(e);
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `H_E(X)`, the smallest hereditary set containing `x`.
    pub fn hereditary_closure(&self, x: &VertexSet) -> VertexSet {
        self.forward_closure(x.iter().copied())
    }

    /// Smallest saturated superset: keep adding regular vertices whose
    /// out-edges all land inside.
    pub fn saturated_closure(&self, h: &VertexSet) -> VertexSet {
        let mut out = h.clone();
        loop {
            let added: Vec<VertexId> = self
                .vertices()
                .filter(|v| !out.contains(v) && self.is_regular(*v))
                .filter(|&v| self.out_edges(v).iter().all(|&e| out.contains(&self.range(e))))
                .collect();
            if added.is_empty() {
                return out;
            }
            out.extend(added);
        }
    }

    /// Smallest hereditary and saturated superset.
    pub fn hs_closure(&self, x: &VertexSet) -> VertexSet {
        let mut cur = x.clone();
        loop {
            let next = self.saturated_closure(&self.hereditary_closure(&cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_hereditary(&self, h: &VertexSet) -> bool {
        self.check_hereditary(h).is_ok()
    }

    pub(crate) fn check_hereditary(&self, h: &VertexSet) -> Result<()> {
        for &v in h {
            for &e in self.out_edges(v) {
                let w = self.range(e);
                if !h.contains(&w) {
                    return Err(Error::NotHereditary {
                        from: self.vertex_name(v).to_string(),
                        to: self.vertex_name(w).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `E_H = (H, s⁻¹(H), r, s)` for hereditary `h`.
    pub fn restrict(&self, h: &VertexSet) -> Result<Graph> {
        self.check_hereditary(h)?;
        Ok(self.induced(h))
    }

    /// The graph on `E⁰ \ H` with the edges whose range is outside `H`.
    ///
    /// When `H` is not hereditary an edge may leave `H`; such edges have no
    /// source vertex in the complement and are dropped.
    pub fn complement_graph(&self, h: &VertexSet) -> Graph {
        let keep: VertexSet = self.vertices().filter(|v| !h.contains(v)).collect();
        let mut b = GraphBuilder::new();
        for &v in &keep {
            b.add_vertex(self.vertex_name(v)).expect("unique");
        }
        for e in self.edges() {
            if keep.contains(&self.range(e)) && keep.contains(&self.source(e)) {
                b.add_edge(
                    self.edge_name(e),
                    self.vertex_name(self.source(e)),
                    self.vertex_name(self.range(e)),
                )
                .expect("unique");
            }
        }
        b.build()
    }

    /// True when the graph has no directed cycle (loops included).
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let mut indeg: Vec<usize> = self.vertices().map(|v| self.in_edges(v).len()).collect();
        let mut queue: VecDeque<VertexId> = self.vertices().filter(|v| indeg[v.0] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &e in self.out_edges(v) {
                let w = self.range(e);
                indeg[w.0] -= 1;
                if indeg[w.0] == 0 {
                    queue.push_back(w);
                }
            }
        }
        removed == self.vertex_count()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::testing::arb_graph;
    use proptest::prelude::*;

    fn names(g: &Graph, s: &VertexSet) -> Vec<String> {
        g.sorted_names(s)
    }

    fn set(g: &Graph, n: &[&str]) -> VertexSet {
        g.resolve_vertices(n).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g = tailed_cycle();
        let c = g.classify();
        assert!(c.sinks.is_empty());
        assert_eq!(names(&g, &c.sources), ["5"]);
        assert_eq!(c.regular, g.all_vertices());

        let lone = Graph::from_parts(["v"], Vec::<(&str, &str, &str)>::new()).unwrap();
        let c = lone.classify();
        assert_eq!(names(&lone, &c.sinks), ["v"]);
        assert_eq!(names(&lone, &c.sources), ["v"]);
        assert!(c.regular.is_empty());

        let g = line();
        assert_eq!(names(&g, &g.classify().sinks), ["2"]);
        assert_eq!(names(&g, &g.classify().singular), ["2"]);
    }

    #[test]
    fn reachability() {
        let g = tailed_cycle();
        assert!(g.reaches_by_name("5", "1").unwrap());
        assert!(g.reaches_by_name("3", "3").unwrap());
        assert!(!g.reaches_by_name("1", "5").unwrap());
        assert_eq!(g.reaches_by_name("1", "9"), Err(Error::UnknownVertex("9".into())));
    }

    #[test]
    fn hereditary_closure_examples() {
        let g = tailed_cycle();
        assert_eq!(names(&g, &g.hereditary_closure(&set(&g, &["1"]))), ["1", "2", "3"]);
        assert!(g.hereditary_closure(&VertexSet::new()).is_empty());
        assert_eq!(g.hereditary_closure(&set(&g, &["5"])), g.all_vertices());
    }

    #[test]
    fn saturated_closure_examples() {
        let g = line();
        assert_eq!(names(&g, &g.saturated_closure(&set(&g, &["2"]))), ["1", "2"]);
        assert!(g.saturated_closure(&VertexSet::new()).is_empty());
        let g = three_cycle();
        assert_eq!(g.saturated_closure(&set(&g, &["w"])), g.all_vertices());
    }

    #[test]
    fn hs_closure_examples() {
        let g = tailed_cycle();
        assert_eq!(g.hs_closure(&set(&g, &["1"])), g.all_vertices());
        assert_eq!(g.hs_closure(&g.all_vertices()), g.all_vertices());
        let g = single_loop();
        assert_eq!(g.hs_closure(&set(&g, &["v"])), g.all_vertices());
    }

    #[test]
    fn restrict_examples() {
        let g = tailed_cycle();
        let r = g.restrict(&set(&g, &["1", "2", "3"])).unwrap();
        assert_eq!(r.to_text(), "vertex 1\nvertex 2\nvertex 3\nedge a 1 3\nedge b 3 2\nedge c 2 1\n");
        assert_eq!(g.restrict(&g.all_vertices()).unwrap(), g);
        assert!(matches!(
            g.restrict(&set(&g, &["4", "1"])),
            Err(Error::NotHereditary { .. })
        ));
        let l = single_loop();
        assert_eq!(l.restrict(&l.all_vertices()).unwrap(), l);
    }

    #[test]
    fn complement_examples() {
        let g = tailed_cycle();
        let c = g.complement_graph(&set(&g, &["1", "2", "3"]));
        assert_eq!(c.to_text(), "vertex 4\nvertex 5\nedge g1 5 4\n");
        assert_eq!(g.complement_graph(&g.all_vertices()), Graph::empty());
        assert_eq!(g.complement_graph(&VertexSet::new()), g);
    }

    #[test]
    fn acyclicity() {
        assert!(line().is_acyclic());
        assert!(!single_loop().is_acyclic());
        assert!(!tailed_cycle().is_acyclic());
        assert!(Graph::empty().is_acyclic());
    }

    fn arb_graph_and_sets() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
        arb_graph(10, 20).prop_flat_map(|g| {
            let n = g.vertex_count();
            (
                Just(g),
                proptest::collection::btree_set(0..n, 0..=n),
                proptest::collection::btree_set(0..n, 0..=n),
            )
                .prop_map(|(g, a, b)| {
                    let a = a.into_iter().map(VertexId).collect::<VertexSet>();
                    let b = b.into_iter().map(VertexId).collect::<VertexSet>();
                    (g, a, b)
                })
        })
    }

    proptest! {
        #[test]
        fn closures_are_closure_operators((g, a, b) in arb_graph_and_sets()) {
            let ab: VertexSet = a.union(&b).copied().collect();
            for op in [Graph::hereditary_closure, Graph::saturated_closure, Graph::hs_closure] {
                let ca = op(&g, &a);
                prop_assert!(ca.is_superset(&a));
                prop_assert_eq!(&op(&g, &ca), &ca);
                prop_assert!(op(&g, &ab).is_superset(&ca));
            }
            let h = g.hereditary_closure(&a);
            prop_assert!(g.is_hereditary(&h));
            let r = g.restrict(&h).unwrap();
            for e in r.edges() {
                prop_assert!(h.contains(&g.vertex(r.vertex_name(r.range(e))).unwrap()));
            }
            let c = g.classify();
            prop_assert_eq!(
                c.regular.union(&c.singular).copied().collect::<VertexSet>(),
                g.all_vertices()
            );
            prop_assert!(c.regular.is_disjoint(&c.singular));
        }
    }
}
