use proptest::prelude::*;

use crate::graph::Graph;

/// Random multigraph on `v0…` with edges `e0…`; loops and parallel edges allowed.
pub fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |raw| graph_from_pairs(n, &raw))
    })
}

/// Random graph in which every vertex emits at least one edge.
pub fn arb_no_sink_graph(max_v: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(move |n| {
        (
            proptest::collection::vec(0..n, n),
            proptest::collection::vec((0..n, 0..n), 0..=max_extra),
        )
            .prop_map(move |(targets, extra)| {
                let mut raw: Vec<(usize, usize)> = targets.into_iter().enumerate().collect();
                raw.extend(extra);
                graph_from_pairs(n, &raw)
            })
    })
}

pub fn graph_from_pairs(n: usize, raw: &[(usize, usize)]) -> Graph {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let es: Vec<(String, String, String)> = raw
        .iter()
        .enumerate()
        .map(|(i, &(s, r))| (format!("e{i}"), vs[s].clone(), vs[r].clone()))
        .collect();
    Graph::from_parts(vs.clone(), es).unwrap()
}
