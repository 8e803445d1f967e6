//! The default weight function.
//!
//! Every shadow element `D` gets weight `w(D) = 1/d(D)`, and every edge the
//! sum of the weights of its `r` boundary `(r-1)`-sets. Summed over all
//! edges, each shadow element contributes exactly `d(D) * 1/d(D) = 1`, so
//! the total edge weight equals the shadow size. The rest of the crate
//! leans on that exact identity, which is why all weights are rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{rat_int, Rat};
use crate::error::{Error, Result};
use crate::hypergraph::{subsets_without_one, Hypergraph};

/// Exact weights of a hypergraph's shadow elements and edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    pub shadow_weights: BTreeMap<Vec<usize>, Rat>,
    pub edge_weights: BTreeMap<Vec<usize>, Rat>,
}

impl WeightMap {
    pub fn total_edge_weight(&self) -> Rat {
        self.edge_weights.values().fold(Rat::zero(), |a, b| a + b)
    }

    /// Checks `sum of w(e) == |shadow|` exactly.
    pub fn identity_holds(&self, g: &Hypergraph) -> bool {
        self.total_edge_weight() == rat_int(g.shadow_size())
    }
}

/// Computes the default weight function of a non-empty hypergraph.
pub fn default_weights(g: &Hypergraph) -> Result<WeightMap> {
    if g.is_empty() {
        return Err(Error::EmptyHypergraph);
    }
    let degrees = g.codegree_map();
    let shadow_weights: BTreeMap<Vec<usize>, Rat> = degrees
        .iter()
        .map(|(d, &count)| (d.clone(), rat_int(1) / rat_int(count)))
        .collect();
    let mut edge_weights = BTreeMap::new();
    for e in g.edges() {
        let mut w = Rat::zero();
        for d in subsets_without_one(e) {
            w += &shadow_weights[&d];
        }
        edge_weights.insert(e.clone(), w);
    }
    Ok(WeightMap {
        shadow_weights,
        edge_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn complete_k4_is_symmetric() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let w = default_weights(&g).unwrap();
        for wd in w.shadow_weights.values() {
            assert_eq!(*wd, rat(1, 2));
        }
        for we in w.edge_weights.values() {
            assert_eq!(*we, rat(3, 2));
        }
        assert_eq!(w.total_edge_weight(), rat(6, 1));
        assert!(w.identity_holds(&g));
    }

    #[test]
    fn single_edge() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let w = default_weights(&g).unwrap();
        assert_eq!(w.edge_weights[&vec![0, 1, 2]], rat(3, 1));
        assert!(w.identity_holds(&g));
    }

    #[test]
    fn tight_path_total_is_shadow_size() {
        let g = Hypergraph::new(
            3,
            6,
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]],
        )
        .unwrap();
        let w = default_weights(&g).unwrap();
        assert_eq!(w.total_edge_weight(), rat(9, 1));
        assert_eq!(g.shadow_size(), 9);
    }

    #[test]
    fn empty_graph_is_an_error() {
        let g = Hypergraph::empty(3, 4).unwrap();
        assert!(matches!(default_weights(&g), Err(Error::EmptyHypergraph)));
    }

    #[test]
    fn identity_on_r1() {
        // r = 1: the shadow is the single empty set, total weight 1.
        let g = Hypergraph::new(1, 3, vec![vec![0], vec![2]]).unwrap();
        let w = default_weights(&g).unwrap();
        assert_eq!(w.total_edge_weight(), rat(1, 1));
        assert_eq!(g.shadow_size(), 1);
    }
}
