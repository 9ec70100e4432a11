use super::{Graph, PathSeq, VertexId, VertexSet};

impl Graph {
    /// Every cycle whose vertices each emit exactly one edge, rotated to start
    /// at its lexicographically least vertex, ordered by that vertex.
    pub fn cycles_without_exits(&self) -> Vec<PathSeq> {
        let mut visited = vec![false; self.vertex_count()];
        let mut out: Vec<PathSeq> = Vec::new();
        for start in self.vertices() {
            if visited[start.0] || self.out_edges(start).len() != 1 {
                continue;
            }
            // Walk the functional part of the graph from `start`.
            let mut trail: Vec<VertexId> = Vec::new();
            let mut pos = vec![usize::MAX; self.vertex_count()];
            let mut v = start;
            loop {
                if self.out_edges(v).len() != 1 || visited[v.0] {
                    break;
                }
                if pos[v.0] != usize::MAX {
                    let cycle = &trail[pos[v.0]..];
                    out.push(self.rotated_cycle(cycle));
                    break;
                }
                pos[v.0] = trail.len();
                trail.push(v);
                v = self.range(self.out_edges(v)[0]);
            }
            for u in trail {
                visited[u.0] = true;
            }
        }
        out.sort_by(|a, b| self.vertex_name(a.source()).cmp(self.vertex_name(b.source())));
        out
    }

    fn rotated_cycle(&self, cycle: &[VertexId]) -> PathSeq {
        let first = (0..cycle.len())
            .min_by(|&i, &j| self.vertex_name(cycle[i]).cmp(self.vertex_name(cycle[j])))
            .expect("nonempty cycle");
        let edges = (0..cycle.len())
            .map(|k| self.out_edges(cycle[(first + k) % cycle.len()])[0])
            .collect();
        PathSeq::from_edges(self, edges).expect("cycle edges compose")
    }

    /// Vertices lying on some cycle without exits.
    pub fn exit_free_cycle_vertices(&self) -> VertexSet {
        self.cycles_without_exits()
            .iter()
            .flat_map(|c| c.vertex_set(self))
            .collect()
    }

    /// Paths of length at most `max_len` ending on a cycle without exits,
    /// sorted by length and then by display name.
    pub fn distinguished_paths(&self, max_len: usize) -> Vec<PathSeq> {
        let targets = self.exit_free_cycle_vertices();
        let mut layer: Vec<PathSeq> = targets.iter().map(|&v| PathSeq::vertex(v)).collect();
        let mut out = Vec::new();
        for len in 0..=max_len {
            let mut sorted = layer.clone();
            sorted.sort_by_key(|p| p.display(self));
            out.extend(sorted);
            if len == max_len {
                break;
            }
            // Extend every path backwards by one edge.
            layer = layer
                .iter()
                .flat_map(|p| {
                    self.in_edges(p.source())
                        .iter()
                        .map(move |&e| PathSeq::edge(self, e).concat(p).expect("composes"))
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::testing::arb_graph;
    use proptest::prelude::*;

    fn shown(g: &Graph, ps: &[PathSeq]) -> Vec<String> {
        ps.iter().map(|p| p.display(g)).collect()
    }

    #[test]
    fn exit_free_cycles() {
        let g = tailed_cycle();
        let cs = g.cycles_without_exits();
        assert_eq!(shown(&g, &cs), ["a.b.c"]);
        assert_eq!(g.vertex_name(cs[0].source()), "1");
        assert!(rose2().cycles_without_exits().is_empty());
        let l = single_loop();
        assert_eq!(shown(&l, &l.cycles_without_exits()), ["e"]);
    }

    #[test]
    fn rotation_starts_at_least_name() {
        let g = three_cycle();
        let cs = g.cycles_without_exits();
        assert_eq!(shown(&g, &cs), ["y.z.x"]);
    }

    #[test]
    fn distinguished() {
        let g = tailed_cycle();
        assert_eq!(shown(&g, &g.distinguished_paths(0)), ["1", "2", "3"]);
        assert_eq!(
            shown(&g, &g.distinguished_paths(1)),
            ["1", "2", "3", "a", "b", "c", "f1", "f2"]
        );
        assert!(rose2().distinguished_paths(4).is_empty());
    }

    proptest! {
        #[test]
        fn exit_free_cycles_are_disjoint(g in arb_graph(10, 14)) {
            let cs = g.cycles_without_exits();
            let mut seen = VertexSet::new();
            for c in &cs {
                prop_assert!(c.is_closed());
                for v in c.vertex_set(&g) {
                    prop_assert_eq!(g.out_edges(v).len(), 1);
                    prop_assert!(seen.insert(v));
                }
                prop_assert_eq!(c.vertex_set(&g).len(), c.len());
            }
        }
    }
}
