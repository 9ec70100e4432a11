use std::collections::BTreeMap;
use std::fmt;

use super::{Degree, Lpa, LpaElement, WeightMap};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Images of the generators of a target graph, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub vertices: BTreeMap<String, LpaElement>,
    pub edges: BTreeMap<String, LpaElement>,
}

impl Assignment {
    fn resolve(&self, target: &Graph) -> Result<(Vec<&LpaElement>, Vec<&LpaElement>)> {
        if let Some(v) = self.vertices.keys().find(|v| target.vertex(v).is_none()) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        if let Some(e) = self.edges.keys().find(|e| target.edge(e).is_none()) {
            return Err(Error::UnknownEdge(e.clone()));
        }
        let vs = target
            .vertices()
            .map(|v| {
                let name = target.vertex_name(v);
                self.vertices.get(name).ok_or_else(|| Error::IncompleteAssignment(name.to_string()))
            })
            .collect::<Result<_>>()?;
        let es = target
            .edges()
            .map(|e| {
                let name = target.edge_name(e);
                self.edges.get(name).ok_or_else(|| Error::IncompleteAssignment(name.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok((vs, es))
    }
}

/// Relations checked and the names of those that failed, such as
/// `ck1(a,b)` or `orthogonal(v,w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, name: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(name());
        }
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "checked {}", self.checked)?;
        writeln!(f, "failed {}", self.failures.len())?;
        for name in &self.failures {
            writeln!(f, "failure {name}")?;
        }
        writeln!(f, "verdict {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Checks that the images form a Cuntz-Krieger `target`-family in `L(host)`:
/// nonzero orthogonal idempotents at vertices, source and range absorption,
/// CK-1 and CK-2 at regular vertices of `target`.
pub fn verify_ck_family(target: &Graph, assignment: &Assignment, host: &Graph) -> Result<VerifyReport> {
    let (p, s) = assignment.resolve(target)?;
    let l = Lpa::new(host);
    let vname = |v: usize| target.vertex_name(target.vertices().nth(v).expect("vertex index"));
    let ename = |e: usize| target.edge_name(target.edges().nth(e).expect("edge index"));
    let mut report = VerifyReport::default();

    for (i, pv) in p.iter().enumerate() {
        report.check(l.equals(&(*pv * *pv), pv), || format!("idempotent({})", vname(i)));
        report.check(!l.is_zero(pv), || format!("nonzero({})", vname(i)));
        for (j, pw) in p.iter().enumerate().skip(i + 1) {
            report.check(l.is_zero(&(*pv * *pw)), || format!("orthogonal({},{})", vname(i), vname(j)));
        }
    }

    let ghosts: Vec<LpaElement> = s.iter().map(|x| x.star()).collect();
    for e in target.edges() {
        let i = e.index();
        let se = s[i];
        let ps = p[target.source(e).index()];
        let pr = p[target.range(e).index()];
        report.check(l.equals(&(ps * se), se), || format!("source({})", ename(i)));
        report.check(l.equals(&(se * pr), se), || format!("range({})", ename(i)));
        for f in target.edges() {
            let j = f.index();
            let expected = if i == j { pr.clone() } else { LpaElement::zero() };
            report.check(l.equals(&(&ghosts[i] * s[j]), &expected), || format!("ck1({},{})", ename(i), ename(j)));
        }
    }

    for v in target.vertices().filter(|&v| target.is_regular(v)) {
        let sum = target
            .out_edges(v)
            .iter()
            .fold(LpaElement::zero(), |acc, &e| &acc + &(s[e.index()] * &ghosts[e.index()]));
        report.check(l.equals(p[v.index()], &sum), || format!("ck2({})", target.vertex_name(v)));
    }
    Ok(report)
}

/// Vertex images must have degree 0 and edge images degree 1 under `w`.
pub fn check_grading(target: &Graph, assignment: &Assignment, host: &Graph, w: &WeightMap) -> Result<VerifyReport> {
    let (p, s) = assignment.resolve(target)?;
    let l = Lpa::new(host);
    let mut report = VerifyReport::default();
    for v in target.vertices() {
        let d = l.degree(p[v.index()], w);
        report.check(d == Degree::Homogeneous(0), || format!("degree({})", target.vertex_name(v)));
    }
    for e in target.edges() {
        let d = l.degree(s[e.index()], w);
        report.check(d == Degree::Homogeneous(1), || format!("degree({})", target.edge_name(e)));
    }
    Ok(report)
}

/// A target graph with generator images in a host algebra, and optionally a
/// weight map on host edges.
///
/// ```text
/// vertex <name> = <element>
/// edge <name> <source> <range> = <element>
/// weight <host-edge> <integer>
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFile {
    pub target: Graph,
    pub assignment: Assignment,
    pub weights: Option<BTreeMap<String, i64>>,
}

impl FamilyFile {
    pub fn to_text(&self, host: &Graph) -> String {
        let l = Lpa::new(host);
        let mut out = String::new();
        for v in self.target.vertices() {
            let name = self.target.vertex_name(v);
            if let Some(x) = self.assignment.vertices.get(name) {
                out.push_str(&format!("vertex {name} = {}\n", l.display(x)));
            }
        }
        for e in self.target.edges() {
            let name = self.target.edge_name(e);
            if let Some(x) = self.assignment.edges.get(name) {
                let (s, r) = (self.target.source(e), self.target.range(e));
                out.push_str(&format!(
                    "edge {name} {} {} = {}\n",
                    self.target.vertex_name(s),
                    self.target.vertex_name(r),
                    l.display(x)
                ));
            }
        }
        if let Some(w) = &self.weights {
            for e in host.edges() {
                if let Some(x) = w.get(host.edge_name(e)) {
                    out.push_str(&format!("weight {} {x}\n", host.edge_name(e)));
                }
            }
        }
        out
    }

    pub fn parse(text: &str, host: &Graph) -> Result<FamilyFile> {
        let l = Lpa::new(host);
        let mut builder = GraphBuilder::new();
        let mut assignment = Assignment::default();
        let mut weights: Option<BTreeMap<String, i64>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| match e {
                Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
                other => Error::Parse { line: i + 1, message: other.to_string() },
            };
            let (head, rhs) = match line.split_once('=') {
                Some((h, r)) => (h, Some(r)),
                None => (line, None),
            };
            let fields: Vec<&str> = head.split_whitespace().collect();
            match (fields.as_slice(), rhs) {
                (["vertex", name], Some(rhs)) => {
                    builder.add_vertex(*name).map_err(at)?;
                    assignment.vertices.insert(name.to_string(), l.parse_element(rhs).map_err(at)?);
                }
                (["edge", name, s, r], Some(rhs)) => {
                    builder.add_edge(*name, s, r).map_err(at)?;
                    assignment.edges.insert(name.to_string(), l.parse_element(rhs).map_err(at)?);
                }
                (["weight", edge, w], None) => {
                    host.require_edge(edge).map_err(at)?;
                    let w = w.parse().map_err(|_| at(Error::Parse { line: 0, message: format!("bad weight `{w}`") }))?;
                    weights.get_or_insert_with(BTreeMap::new).insert(edge.to_string(), w);
                }
                _ => {
                    return Err(Error::Parse { line: i + 1, message: format!("unrecognized line `{line}`") });
                }
            }
        }
        Ok(FamilyFile { target: builder.build(), assignment, weights })
    }
}
