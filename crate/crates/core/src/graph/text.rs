//! Line-oriented graph format:
//!
//! ```text
//! # comment
//! vertex <name>
//! edge <name> <source> <range>
//! ```

use std::str::FromStr;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

impl Graph {
    /// Vertices then edges, in declaration order, one per LF-terminated line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            out.push_str("vertex ");
            out.push_str(self.vertex_name(v));
            out.push('\n');
        }
        for e in self.edges() {
            out.push_str("edge ");
            out.push_str(self.edge_name(e));
            out.push(' ');
            out.push_str(self.vertex_name(self.source(e)));
            out.push(' ');
            out.push_str(self.vertex_name(self.range(e)));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let res = match fields.as_slice() {
                ["vertex", name] => b.add_vertex(*name).map(|_| ()),
                ["edge", name, s, r] => b.add_edge(*name, s, r).map(|_| ()),
                _ => Err(Error::Parse {
                    line,
                    message: format!("expected `vertex <name>` or `edge <name> <src> <dst>`, got `{content}`"),
                }),
            };
            res.map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::Parse { line, message: other.to_string() },
            })?;
        }
        Ok(b.build())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        Graph::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::tailed_cycle;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let g = Graph::parse("# a graph\n\nvertex 1\nvertex 2\n  edge x 1 2  \n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.to_text(), "vertex 1\nvertex 2\nedge x 1 2\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = Graph::parse("vertex a\nedge e a b\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 2, message: "unknown vertex `b`".into() }
        );
        let err = Graph::parse("vertex a\nvertx b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(Graph::parse("vertex a-b\n").is_err());
    }

    #[test]
    fn example_round_trip() {
        let g = tailed_cycle();
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    proptest! {
        #[test]
        fn serialization_round_trips(
            n in 1usize..8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..16),
        ) {
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, String)> = raw
                .iter()
                .enumerate()
                .map(|(i, &(s, r))| (format!("e{i}"), vertices[s % n].clone(), vertices[r % n].clone()))
                .collect();
            let g = Graph::from_parts(vertices.clone(), edges).unwrap();
            let text = g.to_text();
            let back = Graph::parse(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
