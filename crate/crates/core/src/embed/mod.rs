//! Embedding machinery: the generic containment oracle, the greedy
//! color-preserving embedding, subgraph-cleaning helpers, and the two
//! density-driven embedding pipelines (bounded trunk; at most four edges).

mod cleaning;
mod colored;
mod oracle;
mod pipeline;
mod small;

pub use cleaning::{dense_link_vertex, extract_min_codegree, pattern, rainbow_subgraph, Pattern};
pub use colored::color_preserving_embed;
pub use oracle::find_embedding;
pub use pipeline::{embed_bounded_trunk, error_term, gamma_constant, EmbedTrace};
pub use small::embed_small_tree;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// An injection of a pattern's non-isolated vertices into a host such that
/// every pattern edge lands on a host edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: BTreeMap<usize, usize>,
}

impl Embedding {
    pub fn new(map: BTreeMap<usize, usize>) -> Self {
        Embedding { map }
    }

    pub fn empty() -> Self {
        Embedding {
            map: BTreeMap::new(),
        }
    }

    pub fn image_of(&self, v: usize) -> Option<usize> {
        self.map.get(&v).copied()
    }

    pub fn vertex_map(&self) -> &BTreeMap<usize, usize> {
        &self.map
    }

    pub fn image_edge(&self, e: &[usize]) -> Option<Vec<usize>> {
        let mut img: Vec<usize> = e
            .iter()
            .map(|v| self.map.get(v).copied())
            .collect::<Option<_>>()?;
        img.sort_unstable();
        Some(img)
    }

    /// Full independent re-check: defined and injective on the pattern's
    /// non-isolated vertices, every pattern edge mapped onto a host edge.
    pub fn validate(&self, t: &Hypergraph, g: &Hypergraph) -> Result<()> {
        let needed = t.non_isolated();
        let mut images = std::collections::BTreeSet::new();
        for &v in &needed {
            let Some(w) = self.image_of(v) else {
                return Err(Error::invariant(format!("vertex {v} has no image")));
            };
            if w >= g.vertex_count() {
                return Err(Error::invariant(format!("image {w} outside the host")));
            }
            if !images.insert(w) {
                return Err(Error::invariant(format!("image {w} used twice")));
            }
        }
        for e in t.edges() {
            let img = self
                .image_edge(e)
                .ok_or_else(|| Error::invariant("edge with unmapped vertex".to_string()))?;
            if !g.contains_edge(&img) {
                return Err(Error::invariant(format!(
                    "edge {e:?} maps to {img:?}, not a host edge"
                )));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> serde_json::Value {
        let pairs: Vec<[usize; 2]> = self.map.iter().map(|(&v, &w)| [v, w]).collect();
        serde_json::json!(pairs)
    }
}
