//! Exact arithmetic in the Leavitt path algebra `L(E)` over ℚ.
//!
//! Elements are finite sums of monomials `c·αβ*` with `r(α) = r(β)`.
//! Products of monomials are again monomials or zero, so the only relation
//! left to impose is CK-2. It is oriented as
//! `α'ee*β'* → α'β'* − Σ_{f ≠ e, s(f) = s(e)} α'ff*β'*` where `e` is the
//! designated (least named) edge leaving `s(e)`; irreducible monomials form a
//! basis, which gives a decision procedure for equality.

mod text;
mod verify;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use verify::{check_grading, verify_ck_family, Assignment, FamilyFile, VerifyReport};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, PathSeq, VertexId};

/// `coef · αβ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coef: BigRational,
    pub alpha: PathSeq,
    pub beta: PathSeq,
}

impl Monomial {
    /// `(αβ*)(γδ*)`: `β*γ` is nonzero only when one of `β`, `γ` extends the
    /// other.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        let coef = &self.coef * &other.coef;
        if let Some(rest) = other.alpha.strip_prefix(&self.beta) {
            let alpha = self.alpha.concat(&rest)?;
            return Some(Monomial { coef, alpha, beta: other.beta.clone() });
        }
        if let Some(rest) = self.beta.strip_prefix(&other.alpha) {
            let beta = other.beta.concat(&rest)?;
            return Some(Monomial { coef, alpha: self.alpha.clone(), beta });
        }
        None
    }
}

/// A finite linear combination of monomials, kept sorted with like terms
/// merged and no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpaElement {
    terms: BTreeMap<(PathSeq, PathSeq), BigRational>,
}

impl LpaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vertex(v: VertexId) -> Self {
        Self::path(PathSeq::vertex(v))
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Self {
        Self::path(PathSeq::edge(g, e))
    }

    pub fn ghost(g: &Graph, e: EdgeId) -> Self {
        Self::edge(g, e).star()
    }

    /// `α`, that is `α·r(α)*`.
    pub fn path(alpha: PathSeq) -> Self {
        let beta = PathSeq::vertex(alpha.range());
        Self::monomial(BigRational::one(), alpha, beta)
    }

    /// Panics if `r(α) ≠ r(β)`.
    pub fn monomial(coef: BigRational, alpha: PathSeq, beta: PathSeq) -> Self {
        assert_eq!(alpha.range(), beta.range(), "monomial paths must share their range");
        let mut x = Self::zero();
        x.add_term(alpha, beta, coef);
        x
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::monomial(m.coef, m.alpha, m.beta)
    }

    fn add_term(&mut self, alpha: PathSeq, beta: PathSeq, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        let key = (alpha, beta);
        let slot = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|((a, b), c)| Monomial { coef: c.clone(), alpha: a.clone(), beta: b.clone() })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LpaElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// The involution `αβ* ↦ βα*`, conjugate-linear with trivial conjugation.
    pub fn star(&self) -> Self {
        LpaElement {
            terms: self.terms.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())).collect(),
        }
    }
}

impl Add for &LpaElement {
    type Output = LpaElement;

    fn add(self, rhs: &LpaElement) -> LpaElement {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Neg for &LpaElement {
    type Output = LpaElement;

    fn neg(self) -> LpaElement {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &LpaElement {
    type Output = LpaElement;

    fn sub(self, rhs: &LpaElement) -> LpaElement {
        self + &(-rhs)
    }
}

impl Mul for &LpaElement {
    type Output = LpaElement;

    fn mul(self, rhs: &LpaElement) -> LpaElement {
        let mut out = LpaElement::zero();
        for x in self.monomials() {
            for y in rhs.monomials() {
                if let Some(m) = x.mul(&y) {
                    out.add_term(m.alpha, m.beta, m.coef);
                }
            }
        }
        out
    }
}

/// Per-edge integer weights; ghosts weigh the negation, vertices 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<i64>,
}

impl WeightMap {
    /// Every edge weighs 1: the length grading.
    pub fn standard(g: &Graph) -> Self {
        WeightMap { weights: vec![1; g.edge_count()] }
    }

    /// Panics if `weights` does not have one entry per edge.
    pub fn from_vec(g: &Graph, weights: Vec<i64>) -> Self {
        assert_eq!(weights.len(), g.edge_count(), "one weight per edge");
        WeightMap { weights }
    }

    pub fn from_names(g: &Graph, named: &BTreeMap<String, i64>) -> Result<Self> {
        let mut weights = vec![None; g.edge_count()];
        for (name, &w) in named {
            weights[g.require_edge(name)?.index()] = Some(w);
        }
        let weights = g
            .edges()
            .map(|e| weights[e.index()].ok_or_else(|| Error::IncompleteAssignment(format!("weight {}", g.edge_name(e)))))
            .collect::<Result<_>>()?;
        Ok(WeightMap { weights })
    }

    pub fn get(&self, e: EdgeId) -> i64 {
        self.weights[e.index()]
    }

    pub fn path_weight(&self, p: &PathSeq) -> i64 {
        p.edges().iter().map(|&e| self.get(e)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    NonHomogeneous,
}

/// Order in which pending monomials are rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    ShortestFirst,
    LongestFirst,
}

/// Arithmetic context bound to a host graph.
#[derive(Clone, Debug)]
pub struct Lpa<'g> {
    graph: &'g Graph,
    designated: Vec<Option<EdgeId>>,
}

impl<'g> Lpa<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let designated = graph
            .vertices()
            .map(|v| graph.out_edges(v).iter().copied().min_by_key(|&e| graph.edge_name(e)))
            .collect();
        Lpa { graph, designated }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// `γ(v)`: the least named edge leaving `v`, `None` at a sink.
    pub fn designated(&self, v: VertexId) -> Option<EdgeId> {
        self.designated[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Result<LpaElement> {
        Ok(LpaElement::vertex(self.graph.require_vertex(name)?))
    }

    pub fn edge(&self, name: &str) -> Result<LpaElement> {
        Ok(LpaElement::edge(self.graph, self.graph.require_edge(name)?))
    }

    pub fn ghost(&self, name: &str) -> Result<LpaElement> {
        Ok(self.edge(name)?.star())
    }

    /// `1 = Σ_v v`.
    pub fn one(&self) -> LpaElement {
        self.graph
            .vertices()
            .fold(LpaElement::zero(), |acc, v| &acc + &LpaElement::vertex(v))
    }

    fn rewrite(&self, alpha: &PathSeq, beta: &PathSeq) -> Option<Vec<(PathSeq, PathSeq, BigInt)>> {
        let e = alpha.last_edge()?;
        if beta.last_edge() != Some(e) {
            return None;
        }
        let v = self.graph.source(e);
        if self.designated(v) != Some(e) {
            return None;
        }
        let (a, _) = alpha.split_last(self.graph)?;
        let (b, _) = beta.split_last(self.graph)?;
        let mut out = vec![(a.clone(), b.clone(), BigInt::one())];
        for &f in self.graph.out_edges(v) {
            if f != e {
                out.push((a.push(self.graph, f), b.push(self.graph, f), -BigInt::one()));
            }
        }
        Some(out)
    }

    pub fn normal_form(&self, x: &LpaElement) -> LpaElement {
        self.normal_form_with(x, RewriteOrder::ShortestFirst)
    }

    /// Every rewrite either shortens a monomial or replaces a designated
    /// ending by a non-designated one, so the loop terminates.
    pub fn normal_form_with(&self, x: &LpaElement, order: RewriteOrder) -> LpaElement {
        let mut pending = x.clone();
        let mut done = LpaElement::zero();
        loop {
            let size = |(a, b): &(PathSeq, PathSeq)| a.len() + b.len();
            let key = match order {
                RewriteOrder::ShortestFirst => pending.terms.keys().min_by_key(|k| size(k)),
                RewriteOrder::LongestFirst => pending.terms.keys().max_by_key(|k| size(k)),
            };
            let Some(key) = key.cloned() else { break };
            let coef = pending.terms.remove(&key).expect("key was just found");
            let (alpha, beta) = key;
            match self.rewrite(&alpha, &beta) {
                Some(replacement) => {
                    for (a, b, k) in replacement {
                        pending.add_term(a, b, &coef * BigRational::from_integer(k));
                    }
                }
                None => done.add_term(alpha, beta, coef),
            }
        }
        done
    }

    pub fn is_normal(&self, x: &LpaElement) -> bool {
        x.terms.keys().all(|(a, b)| self.rewrite(a, b).is_none())
    }

    pub fn equals(&self, x: &LpaElement, y: &LpaElement) -> bool {
        self.normal_form(&(x - y)).is_zero()
    }

    pub fn is_zero(&self, x: &LpaElement) -> bool {
        self.normal_form(x).is_zero()
    }

    /// Degree of the normal form; zero has degree 0.
    pub fn degree(&self, x: &LpaElement, w: &WeightMap) -> Degree {
        let nf = self.normal_form(x);
        let mut degrees = nf.terms.keys().map(|(a, b)| w.path_weight(a) - w.path_weight(b));
        let Some(first) = degrees.next() else { return Degree::Homogeneous(0) };
        if degrees.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::NonHomogeneous
        }
    }

    /// `ω = αλα*` for a cycle `λ` without exits based at `r(α)`.
    pub fn omega(&self, alpha: &PathSeq, lambda: &PathSeq) -> Result<LpaElement> {
        let g = self.graph;
        if !lambda.is_closed() || lambda.source() != alpha.range() {
            return Err(Error::NotExitFreeCycle(format!(
                "`{}` is not a closed path at `{}`",
                lambda.display(g),
                g.vertex_name(alpha.range())
            )));
        }
        if lambda.vertex_set(g).len() != lambda.len() {
            return Err(Error::NotExitFreeCycle(format!("`{}` revisits a vertex", lambda.display(g))));
        }
        if let Some(&e) = lambda.edges().iter().find(|&&e| g.out_edges(g.source(e)).len() != 1) {
            return Err(Error::NotExitFreeCycle(format!(
                "`{}` has an exit at `{}`",
                lambda.display(g),
                g.vertex_name(g.source(e))
            )));
        }
        let top = alpha.concat(lambda).expect("λ starts at r(α)");
        Ok(LpaElement::monomial(BigRational::one(), top, alpha.clone()))
    }
}
