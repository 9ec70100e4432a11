//! Computational toolkit for Leavitt path algebras of finite graphs.
//!
//! * [`graph`]: finite directed multigraphs, paths, hereditary and saturated
//!   closures, cycles without exits.
//! * [`moves`]: isomorphism-preserving graph transformations and the
//!   desourcification pipeline, with replayable [`moves::MoveTrace`]s.
//! * [`corners`]: directed forests, T-corner graphs and their
//!   Cuntz-Krieger families.
//! * [`lpa`]: exact symbolic arithmetic modulo the Cuntz-Krieger relations.
//! * [`ktheory`]: Smith normal form and K-theory ranks.
//! * [`monoid`]: the graph monoid and bounded equivalence search.

pub mod corners;
pub mod error;
pub mod graph;
pub mod ktheory;
pub mod lpa;
pub mod monoid;
pub mod moves;

#[cfg(test)]
pub(crate) mod testing;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, GraphBuilder, PathSeq, VertexId, VertexSet};
