//! K-theory ranks of a finite graph from its presentation matrix.
//!
//! With `B = I − Aᵗ` restricted to regular columns and `ρ = rank B`:
//! `K₀ = coker B` has free rank `|E⁰| − ρ`, the kernel of `B` has rank
//! `|E⁰_reg| − ρ`, and for a field whose unit group has rank `r` the
//! algebraic `K₁` has rank `(|E⁰_reg| − ρ) + r·(|E⁰| − ρ)`.

mod matrix;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

pub use matrix::IntMatrix;
pub use snf::smith_normal_form;

use crate::graph::Graph;

/// Rank of the unit group of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitRank {
    Finite(u64),
    Infinite,
}

impl fmt::Display for UnitRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitRank::Finite(r) => write!(f, "{r}"),
            UnitRank::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for UnitRank {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" => Ok(UnitRank::Infinite),
            _ => s
                .parse()
                .map(UnitRank::Finite)
                .map_err(|_| format!("expected a nonnegative integer or `inf`, got `{s}`")),
        }
    }
}

/// A rank that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

/// `A[v][w]` counts edges `v → w`; rows and columns follow declaration order.
pub fn adjacency(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let mut a = IntMatrix::zeros(n, n);
    for e in g.edges() {
        let (s, r) = (g.source(e).index(), g.range(e).index());
        let cur = a.get(s, r) + 1;
        a.set(s, r, cur);
    }
    a
}

/// `I − Aᵗ` with one column per regular vertex.
pub fn presentation_matrix(g: &Graph) -> IntMatrix {
    let a = adjacency(g);
    let regular: Vec<usize> = g.vertices().filter(|&v| g.is_regular(v)).map(|v| v.index()).collect();
    let mut b = IntMatrix::zeros(g.vertex_count(), regular.len());
    for (col, &v) in regular.iter().enumerate() {
        for w in 0..g.vertex_count() {
            let mut entry = -a.get(v, w).clone();
            if w == v {
                entry += 1;
            }
            b.set(w, col, entry);
        }
    }
    b
}

/// The isomorphism type of `K₀`: free rank plus nonunit invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Data {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn k0_data(g: &Graph) -> K0Data {
    let factors = smith_normal_form(&presentation_matrix(g));
    K0Data {
        free_rank: g.vertex_count() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSummary {
    pub presentation: IntMatrix,
    pub rational_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub vertices: usize,
    pub regular: usize,
    pub singular: usize,
    pub rank_k0: usize,
    /// Nonunit invariant factors.
    pub torsion: Vec<BigInt>,
    pub unit_rank: UnitRank,
    pub rank_k1: Rank,
    /// Rank of `K₁` of the graph C*-algebra, the kernel rank of `B`.
    pub rank_k1_cstar: usize,
}

impl KSummary {
    pub fn k0(&self) -> K0Data {
        K0Data { free_rank: self.rank_k0, torsion: self.torsion.clone() }
    }
}

pub fn k_summary(g: &Graph, unit_rank: UnitRank) -> KSummary {
    let presentation = presentation_matrix(g);
    let invariant_factors = smith_normal_form(&presentation);
    let rho = invariant_factors.len();
    let vertices = g.vertex_count();
    let regular = presentation.cols();
    let rank_k0 = vertices - rho;
    let rank_k1_cstar = regular - rho;
    // An infinite unit rank contributes nothing when K₀ has rank 0.
    let rank_k1 = match unit_rank {
        UnitRank::Finite(r) => Rank::Finite(rank_k1_cstar as u64 + r * rank_k0 as u64),
        UnitRank::Infinite if rank_k0 > 0 => Rank::Infinite,
        UnitRank::Infinite => Rank::Finite(rank_k1_cstar as u64),
    };
    let torsion = invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect();
    KSummary {
        presentation,
        rational_rank: rho,
        invariant_factors,
        vertices,
        regular,
        singular: vertices - regular,
        rank_k0,
        torsion,
        unit_rank,
        rank_k1,
        rank_k1_cstar,
    }
}

/// Outcome of the rank criterion `rank K₁ = (r+1)·rank K₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCriterion {
    Holds,
    Fails,
    /// The criterion needs a finite unit-group rank.
    Inapplicable,
}

impl fmt::Display for RankCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankCriterion::Holds => "true",
            RankCriterion::Fails => "false",
            RankCriterion::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub no_sinks: bool,
    pub is_ck: bool,
    pub strongly_graded: bool,
    /// `rank K₀(C*) = rank K₁(C*)`.
    pub criterion4: bool,
    pub criterion5: RankCriterion,
    /// The equivalent conditions agree; `false` means a bug.
    pub consistent: bool,
    pub summary: KSummary,
}

pub fn classify(g: &Graph, unit_rank: UnitRank) -> Verdict {
    let summary = k_summary(g, unit_rank);
    let no_sinks = g.sinks().next().is_none();
    let criterion4 = summary.rank_k0 == summary.rank_k1_cstar;
    let criterion5 = match (unit_rank, summary.rank_k1) {
        (UnitRank::Finite(r), Rank::Finite(k1)) => {
            if k1 == (r + 1) * summary.rank_k0 as u64 {
                RankCriterion::Holds
            } else {
                RankCriterion::Fails
            }
        }
        _ => RankCriterion::Inapplicable,
    };
    let consistent = no_sinks == criterion4
        && match criterion5 {
            RankCriterion::Holds => no_sinks,
            RankCriterion::Fails => !no_sinks,
            RankCriterion::Inapplicable => true,
        };
    Verdict {
        no_sinks,
        is_ck: no_sinks,
        strongly_graded: no_sinks,
        criterion4,
        criterion5,
        consistent,
        summary,
    }
}
