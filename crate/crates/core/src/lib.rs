//! Exact combinatorics of uniform hypergraphs and tight trees.
//!
//! The crate revolves around a single carrier type, [`Hypergraph`]: an
//! `r`-uniform edge system on vertices `0..n`. On top of it live
//!
//! * shadow / link / codegree primitives and the default weight function
//!   (all arithmetic in exact rationals, never floats),
//! * recognition and certification of tight `r`-trees, trunks, and the
//!   trunk number `c(T)`,
//! * embedding machinery: a generic containment oracle, color-preserving
//!   greedy embedding, and the density-driven pipelines for trees with a
//!   bounded trunk and for trees with at most four edges,
//! * exhaustive desk-scale searches for Turán numbers and shadow ratios,
//! * generators for the extremal families that make those bounds sharp.
//!
//! Everything is deterministic: identical inputs produce identical
//! witnesses, traces, and node counts.

pub mod arith;
pub mod construct;
pub mod embed;
pub mod error;
pub mod hypergraph;
pub mod random;
pub mod search;
pub mod tight;
pub mod weights;

pub use arith::Rat;
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use tight::{RPartition, TightTreeCert, TrunkCert};
pub use weights::WeightMap;
