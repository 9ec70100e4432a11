use std::collections::HashMap;
use std::fmt;

use super::{
    attach_head, attach_sources, eliminate_source, expand_hereditary, head_to_subdivision,
    sources_to_head, subdivide_edge,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One move together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveKind {
    ExpandHereditary { set: Vec<String> },
    AttachHead { vertex: String, n: usize },
    SubdivideEdge { edge: String, n: usize },
    AttachSources { vertex: String, n: usize },
    EliminateSource { vertex: String },
    /// Pendant sources at a vertex exchanged for a head of the same length.
    SourcesToHead { vertex: String, n: usize },
    /// A head at `r(edge)` exchanged for a subdivision of `edge`.
    HeadToSubdivision { edge: String, n: usize },
}

impl MoveKind {
    pub fn tag(&self) -> &'static str {
        match self {
            MoveKind::ExpandHereditary { .. } => "expand-hereditary",
            MoveKind::AttachHead { .. } => "attach-head",
            MoveKind::SubdivideEdge { .. } => "subdivide",
            MoveKind::AttachSources { .. } => "attach-sources",
            MoveKind::EliminateSource { .. } => "eliminate-source",
            MoveKind::SourcesToHead { .. } => "sources-to-head",
            MoveKind::HeadToSubdivision { .. } => "head-to-subdivision",
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match self {
            MoveKind::ExpandHereditary { set } => expand_hereditary(g, &g.resolve_vertices(set)?),
            MoveKind::AttachHead { vertex, n } => attach_head(g, vertex, *n),
            MoveKind::SubdivideEdge { edge, n } => subdivide_edge(g, edge, *n),
            MoveKind::AttachSources { vertex, n } => attach_sources(g, vertex, *n),
            MoveKind::EliminateSource { vertex } => eliminate_source(g, vertex),
            MoveKind::SourcesToHead { vertex, n } => sources_to_head(g, vertex, *n),
            MoveKind::HeadToSubdivision { edge, n } => head_to_subdivision(g, edge, *n),
        }
    }

    pub fn params(&self) -> Vec<String> {
        match self {
            MoveKind::ExpandHereditary { set } => vec![set.join(",")],
            MoveKind::AttachHead { vertex, n }
            | MoveKind::AttachSources { vertex, n }
            | MoveKind::SourcesToHead { vertex, n } => vec![vertex.clone(), n.to_string()],
            MoveKind::SubdivideEdge { edge, n } | MoveKind::HeadToSubdivision { edge, n } => {
                vec![edge.clone(), n.to_string()]
            }
            MoveKind::EliminateSource { vertex } => vec![vertex.clone()],
        }
    }

    /// Builds a move from its tag and textual parameters, as written in a
    /// trace line.
    pub fn from_fields(tag: &str, params: &[&str]) -> std::result::Result<MoveKind, String> {
        let count = |s: &str| -> std::result::Result<usize, String> {
            s.parse().map_err(|_| format!("bad length `{s}`"))
        };
        let kind = match (tag, params) {
            ("expand-hereditary", [set]) => MoveKind::ExpandHereditary {
                set: set.split(',').map(str::to_string).collect(),
            },
            ("attach-head", [v, n]) => MoveKind::AttachHead { vertex: v.to_string(), n: count(n)? },
            ("subdivide", [e, n]) => MoveKind::SubdivideEdge { edge: e.to_string(), n: count(n)? },
            ("attach-sources", [v, n]) => MoveKind::AttachSources { vertex: v.to_string(), n: count(n)? },
            ("eliminate-source", [v]) => MoveKind::EliminateSource { vertex: v.to_string() },
            ("sources-to-head", [v, n]) => MoveKind::SourcesToHead { vertex: v.to_string(), n: count(n)? },
            ("head-to-subdivision", [e, n]) => {
                MoveKind::HeadToSubdivision { edge: e.to_string(), n: count(n)? }
            }
            _ => return Err(format!("unrecognized move `{tag}` with {} parameters", params.len())),
        };
        Ok(kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub input: u64,
    pub output: u64,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "move {}", self.kind.tag())?;
        for p in self.kind.params() {
            write!(f, " {p}")?;
        }
        write!(f, " {:016x} {:016x}", self.input, self.output)
    }
}

/// Ordered log of moves, each naming its input and output graph by
/// fingerprint.
///
/// A record applies to whichever earlier graph carries its input
/// fingerprint (the trace input or a previous output), so a trace may
/// branch: source elimination probes the core of a graph while the
/// expansion that follows starts again from the original.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveTrace {
    records: Vec<MoveRecord>,
}

impl MoveTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn records(&self) -> &[MoveRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Applies `kind` to `g`, records it, and returns the result.
    pub fn apply(&mut self, g: &Graph, kind: MoveKind) -> Result<Graph> {
        let out = kind.apply(g)?;
        self.records.push(MoveRecord { kind, input: g.fingerprint(), output: out.fingerprint() });
        Ok(out)
    }

    /// Re-runs every record starting from `input`, checking fingerprints, and
    /// returns the output of the last record.
    pub fn replay(&self, input: &Graph) -> Result<Graph> {
        let mut known: HashMap<u64, Graph> = HashMap::new();
        known.insert(input.fingerprint(), input.clone());
        let mut last = input.clone();
        for (index, rec) in self.records.iter().enumerate() {
            let from = known.get(&rec.input).ok_or_else(|| Error::Trace {
                index,
                message: format!("no graph with fingerprint {:016x} precedes this record", rec.input),
            })?;
            let out = rec.kind.apply(from).map_err(|e| Error::Trace { index, message: e.to_string() })?;
            let got = out.fingerprint();
            if got != rec.output {
                return Err(Error::Trace {
                    index,
                    message: format!("output fingerprint {got:016x} differs from recorded {:016x}", rec.output),
                });
            }
            known.insert(got, out.clone());
            last = out;
        }
        Ok(last)
    }

    pub fn to_text(&self) -> String {
        self.records.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<MoveTrace> {
        let mut records = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 4 || fields[0] != "move" {
                return Err(err(format!("expected `move <kind> <params...> <in> <out>`, got `{line}`")));
            }
            let hash = |s: &str| u64::from_str_radix(s, 16).map_err(|_| err(format!("bad fingerprint `{s}`")));
            let n = fields.len();
            let input = hash(fields[n - 2])?;
            let output = hash(fields[n - 1])?;
            let kind = MoveKind::from_fields(fields[1], &fields[2..n - 2]).map_err(err)?;
            records.push(MoveRecord { kind, input, output });
        }
        Ok(MoveTrace { records })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn text_round_trip_and_replay() {
        let g = triangle();
        let mut t = MoveTrace::new();
        let a = t.apply(&g, MoveKind::AttachSources { vertex: "v".into(), n: 2 }).unwrap();
        let b = t.apply(&a, MoveKind::SourcesToHead { vertex: "v".into(), n: 2 }).unwrap();
        let c = t.apply(&b, MoveKind::HeadToSubdivision { edge: "gamma".into(), n: 2 }).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("move attach-sources v 2 "));
        let back = MoveTrace::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.replay(&g).unwrap(), c);
    }

    #[test]
    fn replay_detects_tampering() {
        let g = tailed_cycle();
        let mut t = MoveTrace::new();
        t.apply(&g, MoveKind::EliminateSource { vertex: "5".into() }).unwrap();
        let mut bad = t.clone();
        bad.records[0].output ^= 1;
        assert!(matches!(bad.replay(&g), Err(Error::Trace { index: 0, .. })));
        assert!(matches!(t.replay(&triangle()), Err(Error::Trace { index: 0, .. })));
    }

    #[test]
    fn parse_errors() {
        assert!(MoveTrace::parse("move teleport v 0000000000000000 0000000000000000\n").is_err());
        assert!(MoveTrace::parse("move attach-head v x 0 0\n").is_err());
        assert!(MoveTrace::parse("shift v\n").is_err());
        assert!(MoveTrace::parse("# nothing\n\n").unwrap().is_empty());
    }
}
