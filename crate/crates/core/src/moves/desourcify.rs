use super::{pendant_sources, MoveKind, MoveTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Turns a finite graph without sinks into one without sinks or sources
/// whose Leavitt path algebra is isomorphic, recording every step.
///
/// 1. Strip sources repeatedly (by name, round by round) to find the core
///    `F`; these records branch off the input.
/// 2. Expand the input along `F⁰`, which leaves pendant sources hanging off
///    core vertices.
/// 3. For each core vertex in name order, exchange its pendant sources for a
///    head and absorb the head into the lexicographically least edge
///    entering that vertex.
pub fn desourcify(g: &Graph) -> Result<(Graph, MoveTrace)> {
    if let Some(s) = g.sinks().next() {
        return Err(Error::HasSink(g.vertex_name(s).to_string()));
    }
    let mut trace = MoveTrace::new();
    if g.sources().next().is_none() {
        return Ok((g.clone(), trace));
    }

    let mut core = g.clone();
    loop {
        let mut round: Vec<String> = core.sources().map(|v| core.vertex_name(v).to_string()).collect();
        if round.is_empty() {
            break;
        }
        round.sort();
        for vertex in round {
            core = trace.apply(&core, MoveKind::EliminateSource { vertex })?;
        }
    }
    if core.vertex_count() == 0 {
        return Err(Error::Internal("source elimination emptied a graph without sinks".into()));
    }

    let mut core_names: Vec<String> = core.vertices().map(|v| core.vertex_name(v).to_string()).collect();
    core_names.sort();
    let mut current = trace.apply(g, MoveKind::ExpandHereditary { set: core_names.clone() })?;

    for name in &core_names {
        let v = current.require_vertex(name)?;
        let n = pendant_sources(&current, v).len();
        if n == 0 {
            continue;
        }
        current = trace.apply(&current, MoveKind::SourcesToHead { vertex: name.clone(), n })?;
        let v = current.require_vertex(name)?;
        let head_edge = format!("{name}.e1");
        let edge = current
            .in_edges(v)
            .iter()
            .map(|&e| current.edge_name(e))
            .filter(|&e| e != head_edge)
            .min()
            .ok_or_else(|| Error::Internal(format!("core vertex `{name}` has no incoming edge")))?
            .to_string();
        current = trace.apply(&current, MoveKind::HeadToSubdivision { edge, n })?;
    }

    if let Some(v) = current.sources().next() {
        return Err(Error::Internal(format!("source `{}` survived", current.vertex_name(v))));
    }
    if let Some(v) = current.sinks().next() {
        return Err(Error::Internal(format!("sink `{}` appeared", current.vertex_name(v))));
    }
    Ok((current, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::ktheory::k0_data;
    use crate::moves::attach_head;
    use crate::testing::arb_no_sink_graph;
    use proptest::prelude::*;

    fn single_cycle_length(g: &Graph) -> Option<usize> {
        let cs = g.cycles_without_exits();
        (cs.len() == 1 && cs[0].len() == g.vertex_count() && g.edge_count() == g.vertex_count())
            .then(|| cs[0].len())
    }

    #[test]
    fn head_on_three_cycle_becomes_six_cycle() {
        let g = attach_head(&triangle(), "v", 3).unwrap();
        let (out, trace) = desourcify(&g).unwrap();
        assert_eq!(single_cycle_length(&out), Some(6));
        let kinds: Vec<&str> = trace.records().iter().map(|r| r.kind.tag()).collect();
        assert_eq!(
            kinds,
            [
                "eliminate-source",
                "eliminate-source",
                "eliminate-source",
                "expand-hereditary",
                "sources-to-head",
                "head-to-subdivision",
            ]
        );
        assert_eq!(
            trace.records()[5].kind,
            MoveKind::HeadToSubdivision { edge: "gamma".into(), n: 3 }
        );
        assert_eq!(trace.replay(&g).unwrap(), out);
    }

    #[test]
    fn tailed_cycle_becomes_seven_cycle() {
        let g = tailed_cycle();
        let (out, trace) = desourcify(&g).unwrap();
        assert_eq!(single_cycle_length(&out), Some(7));
        assert_eq!(
            trace.records().last().unwrap().kind,
            MoveKind::HeadToSubdivision { edge: "c".into(), n: 4 }
        );
        assert_eq!(trace.replay(&g).unwrap(), out);
    }

    #[test]
    fn source_free_input_is_untouched() {
        let g = bowtie();
        let (out, trace) = desourcify(&g).unwrap();
        assert_eq!(out, g);
        assert!(trace.is_empty());
    }

    #[test]
    fn sinks_are_rejected() {
        assert_eq!(desourcify(&line()), Err(Error::HasSink("2".into())));
    }

    proptest! {
        #[test]
        fn output_is_source_free_and_k0_equivalent(g in arb_no_sink_graph(6, 4)) {
            let (out, trace) = desourcify(&g).unwrap();
            prop_assert_eq!(out.sources().count(), 0);
            prop_assert_eq!(out.sinks().count(), 0);
            prop_assert_eq!(k0_data(&out), k0_data(&g));
            prop_assert_eq!(trace.replay(&g).unwrap(), out);
        }
    }
}
