//! The graph monoid: formal sums of vertices modulo `v = Σ_{s(e)=v} r(e)`.
//!
//! Equivalence is searched for, not decided: a bounded bidirectional
//! breadth-first search either finds a chain of expansions and collapses or
//! gives up.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A finite multiset of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    counts: BTreeMap<VertexId, u64>,
}

impl MonoidElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (VertexId, u64)>) -> Self {
        let mut m = Self::zero();
        for (v, k) in counts {
            m.add(v, k);
        }
        m
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    fn add(&mut self, v: VertexId, k: u64) {
        if k > 0 {
            *self.counts.entry(v).or_insert(0) += k;
        }
    }

    fn remove_one(&mut self, v: VertexId) -> bool {
        match self.counts.get_mut(&v) {
            Some(k) if *k > 1 => {
                *k -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(&v);
                true
            }
            None => false,
        }
    }

    /// Total multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.counts.keys().copied()
    }

    /// `v1:2 v2:1`; `0` for the empty sum.
    pub fn parse(text: &str, g: &Graph) -> Result<MonoidElement> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut m = Self::zero();
        for item in text.split_whitespace() {
            let bad = || Error::Parse { line: 0, message: format!("expected `vertex:count`, got `{item}`") };
            let (name, count) = item.split_once(':').ok_or_else(bad)?;
            let k: u64 = count.parse().map_err(|_| bad())?;
            m.add(g.require_vertex(name)?, k);
        }
        Ok(m)
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.counts
            .iter()
            .map(|(&v, k)| format!("{}:{k}", g.vertex_name(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Replaces one copy of a regular vertex `v` by `Σ_{s(e)=v} r(e)`.
pub fn expand(g: &Graph, m: &MonoidElement, v: VertexId) -> Result<MonoidElement> {
    if m.get(v) == 0 {
        return Err(Error::NotInSupport(g.vertex_name(v).into()));
    }
    if !g.is_regular(v) {
        return Err(Error::SingularVertex(g.vertex_name(v).into()));
    }
    let mut out = m.clone();
    out.remove_one(v);
    for &e in g.out_edges(v) {
        out.add(g.range(e), 1);
    }
    Ok(out)
}

/// Inverse of [`expand`]: replaces `Σ_{s(e)=v} r(e)` by `v` when `m`
/// contains it.
pub fn collapse(g: &Graph, m: &MonoidElement, v: VertexId) -> Option<MonoidElement> {
    if !g.is_regular(v) {
        return None;
    }
    let mut out = m.clone();
    for &e in g.out_edges(v) {
        if !out.remove_one(g.range(e)) {
            return None;
        }
    }
    out.add(v, 1);
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Expand,
    Collapse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub vertex: VertexId,
}

impl Step {
    fn inverse(self) -> Step {
        let kind = match self.kind {
            StepKind::Expand => StepKind::Collapse,
            StepKind::Collapse => StepKind::Expand,
        };
        Step { kind, vertex: self.vertex }
    }

    pub fn apply(self, g: &Graph, m: &MonoidElement) -> Option<MonoidElement> {
        match self.kind {
            StepKind::Expand => expand(g, m, self.vertex).ok(),
            StepKind::Collapse => collapse(g, m, self.vertex),
        }
    }

    pub fn display(self, g: &Graph) -> String {
        let verb = match self.kind {
            StepKind::Expand => "expand",
            StepKind::Collapse => "collapse",
        };
        format!("{verb} {}", g.vertex_name(self.vertex))
    }
}

/// Applies `steps` in order; `None` if one does not apply.
pub fn replay(g: &Graph, start: &MonoidElement, steps: &[Step]) -> Option<MonoidElement> {
    steps.iter().try_fold(start.clone(), |m, s| s.apply(g, &m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// The steps turn the first element into the second.
    Equivalent(Vec<Step>),
    /// No chain within the bounds; says nothing about equivalence.
    NotWithinBound,
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::Equivalent(steps) => write!(f, "equivalent in {} steps", steps.len()),
            Equivalence::NotWithinBound => f.write_str("not within bound"),
        }
    }
}

fn neighbours(g: &Graph, m: &MonoidElement, size_bound: u64) -> Vec<(Step, MonoidElement)> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.is_regular(v)) {
        for kind in [StepKind::Expand, StepKind::Collapse] {
            let step = Step { kind, vertex: v };
            if let Some(next) = step.apply(g, m) {
                if next != *m && next.size() <= size_bound {
                    out.push((step, next));
                }
            }
        }
    }
    out
}

type Parents = HashMap<MonoidElement, Option<(MonoidElement, Step)>>;

fn chain_to(parents: &Parents, end: &MonoidElement) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((prev, step))) = parents.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    steps
}

/// Bidirectional breadth-first search over expansions and collapses, with
/// chains of at most `step_bound` steps through elements of total
/// multiplicity at most `size_bound`.
pub fn equivalent(g: &Graph, a: &MonoidElement, b: &MonoidElement, step_bound: usize, size_bound: u64) -> Equivalence {
    if a == b {
        return Equivalence::Equivalent(Vec::new());
    }
    let mut sides: [(Parents, VecDeque<MonoidElement>); 2] = [
        (HashMap::from([(a.clone(), None)]), VecDeque::from([a.clone()])),
        (HashMap::from([(b.clone(), None)]), VecDeque::from([b.clone()])),
    ];
    let mut depth = 0;
    while depth < step_bound {
        let side = if sides[0].1.len() <= sides[1].1.len() { 0 } else { 1 };
        if sides[side].1.is_empty() {
            break;
        }
        let frontier: Vec<MonoidElement> = sides[side].1.drain(..).collect();
        for m in frontier {
            for (step, next) in neighbours(g, &m, size_bound) {
                if sides[side].0.contains_key(&next) {
                    continue;
                }
                sides[side].0.insert(next.clone(), Some((m.clone(), step)));
                if sides[1 - side].0.contains_key(&next) {
                    let forward = chain_to(&sides[0].0, &next);
                    let backward = chain_to(&sides[1].0, &next);
                    let mut steps = forward;
                    steps.extend(backward.into_iter().rev().map(Step::inverse));
                    return Equivalence::Equivalent(steps);
                }
                sides[side].1.push_back(next);
            }
        }
        depth += 1;
    }
    Equivalence::NotWithinBound
}

/// Whether the hereditary saturated closure of the support is everything.
pub fn is_full(g: &Graph, m: &MonoidElement) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(g.hs_closure(&m.support().collect()).len() == g.vertex_count())
}

/// Expands a full element until every vertex has positive multiplicity.
///
/// Requires a finite graph without sinks or sources in which every vertex
/// carries a loop, so an expanded vertex never leaves the support. Each
/// uncovered vertex, least name first, is reached along the breadth-first
/// path (least edge names first) from the current support. Returns the
/// result and the expansions performed.
pub fn rebalance_full(g: &Graph, m: &MonoidElement) -> Result<(MonoidElement, Vec<Step>)> {
    if let Some(v) = g.sinks().next() {
        return Err(Error::HasSink(g.vertex_name(v).into()));
    }
    if let Some(v) = g.sources().next() {
        return Err(Error::HasSource(g.vertex_name(v).into()));
    }
    if let Some(v) = g.vertices().find(|&v| !g.has_loop(v)) {
        return Err(Error::MissingLoop(g.vertex_name(v).into()));
    }
    if !is_full(g, m)? {
        let closure = g.hs_closure(&m.support().collect());
        let missed = g.vertices().find(|v| !closure.contains(v)).expect("closure is proper");
        return Err(Error::NotFull(g.vertex_name(missed).into()));
    }
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by_key(|&v| g.vertex_name(v));
    let mut current = m.clone();
    let mut steps = Vec::new();
    while let Some(&w) = order.iter().find(|&&w| current.get(w) == 0) {
        let path = bfs_path(g, &current, w).ok_or_else(|| Error::Unreachable(g.vertex_name(w).into()))?;
        for v in path {
            let step = Step { kind: StepKind::Expand, vertex: v };
            current = expand(g, &current, v)?;
            steps.push(step);
        }
    }
    Ok((current, steps))
}

/// Vertices to expand, in order, to move weight from the support to `w`.
fn bfs_path(g: &Graph, m: &MonoidElement, w: VertexId) -> Option<Vec<VertexId>> {
    let mut starts: Vec<VertexId> = m.support().collect();
    starts.sort_by_key(|&v| g.vertex_name(v));
    let mut prev: HashMap<VertexId, Option<VertexId>> = starts.iter().map(|&v| (v, None)).collect();
    let mut queue: VecDeque<VertexId> = starts.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        if v == w {
            break;
        }
        let mut out: Vec<_> = g.out_edges(v).to_vec();
        out.sort_by_key(|&e| g.edge_name(e));
        for e in out {
            let r = g.range(e);
            if let std::collections::hash_map::Entry::Vacant(slot) = prev.entry(r) {
                slot.insert(Some(v));
                queue.push_back(r);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = *prev.get(&w)?;
    while let Some(v) = cur {
        path.push(v);
        cur = prev[&v];
    }
    path.reverse();
    Some(path)
}
