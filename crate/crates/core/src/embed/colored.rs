//! Greedy color-preserving embedding of a certified tight tree into an
//! r-partite host with large minimum codegree.
//!
//! The placement order of the certificate does all the work: the seed edge
//! can go onto any host edge (classes matched by color), and each later
//! edge needs one fresh co-neighbor of an already-placed `(r-1)`-set. With
//! `t` edges in the tree and codegree at least `t`, at most `t-1` vertices
//! are ever excluded, so the greedy choice never backtracks.

use std::collections::BTreeMap;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{subsets_without_one, Hypergraph};
use crate::tight::{RPartition, TightTreeCert};

pub fn color_preserving_embed(
    t: &Hypergraph,
    cert: &TightTreeCert,
    phi: &RPartition,
    g: &Hypergraph,
    parts: &RPartition,
) -> Result<Embedding> {
    let r = t.uniformity();
    if g.uniformity() != r {
        return Err(Error::UniformityMismatch(r, g.uniformity()));
    }
    cert.validate(t)?;
    if phi.r() != r || !phi.is_proper_for(t) {
        return Err(Error::ImproperColoring);
    }
    if parts.r() != r || !parts.is_proper_for(g) {
        return Err(Error::NotRPartite);
    }
    let needed = t.edge_count();
    let found = g.codegree_map().values().min().copied().unwrap_or(0);
    if found < needed {
        return Err(Error::CodegreeTooLow {
            required: needed,
            found,
        });
    }

    // co-neighborhoods of the host, sorted for determinism
    let mut conbrs: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in g.edges() {
        for (skip, d) in subsets_without_one(e).into_iter().enumerate() {
            conbrs.entry(d).or_default().push(e[skip]);
        }
    }
    for z in conbrs.values_mut() {
        z.sort_unstable();
    }

    let edges = t.edges();
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used: Vec<usize> = Vec::new();

    // seed edge onto the host's first edge, classes matched by color
    let seed = &edges[cert.edge_order[0]];
    let host_seed = &g.edges()[0];
    for &v in seed {
        let c = phi.color_of(v).ok_or(Error::ImproperColoring)?;
        let w = host_seed
            .iter()
            .copied()
            .find(|&w| parts.color_of(w) == Some(c))
            .expect("host edge is rainbow");
        map.insert(v, w);
        used.push(w);
    }

    for (pos, step) in cert.steps.iter().enumerate() {
        let e = &edges[cert.edge_order[pos + 1]];
        let residue: Vec<usize> = e
            .iter()
            .copied()
            .filter(|&v| v != step.new_vertex)
            .collect();
        let mut image: Vec<usize> = residue.iter().map(|v| map[v]).collect();
        image.sort_unstable();
        let z = conbrs
            .get(&image)
            .and_then(|zs| zs.iter().copied().find(|z| !used.contains(z)))
            .ok_or_else(|| {
                Error::invariant("codegree guarantee failed to yield a fresh co-neighbor")
            })?;
        debug_assert_eq!(parts.color_of(z), phi.color_of(step.new_vertex));
        map.insert(step.new_vertex, z);
        used.push(z);
    }

    let emb = Embedding::new(map);
    emb.validate(t, g)?;
    for (&v, &w) in emb.vertex_map() {
        if phi.color_of(v) != parts.color_of(w) {
            return Err(Error::invariant(format!(
                "vertex {v} landed outside its color class"
            )));
        }
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tight::{r_partition, tight_order};

    /// Complete 3-partite host with the given class sizes.
    fn complete_multipartite(sizes: &[usize]) -> (Hypergraph, RPartition) {
        let n: usize = sizes.iter().sum();
        let mut color = BTreeMap::new();
        let mut start = 0;
        for (c, &s) in sizes.iter().enumerate() {
            for v in start..start + s {
                color.insert(v, c);
            }
            start += s;
        }
        let parts = RPartition::new(sizes.len(), color).unwrap();
        let mut edges = Vec::new();
        for e in crate::hypergraph::k_subsets(n, sizes.len()) {
            if parts.edge_is_rainbow(&e) {
                edges.push(e);
            }
        }
        (Hypergraph::new(sizes.len(), n, edges).unwrap(), parts)
    }

    fn p43() -> Hypergraph {
        Hypergraph::new(
            3,
            6,
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]],
        )
        .unwrap()
    }

    #[test]
    fn path_into_complete_tripartite() {
        let t = p43();
        let cert = tight_order(&t).unwrap();
        let phi = r_partition(&t, &cert).unwrap();
        let (g, parts) = complete_multipartite(&[4, 4, 4]);
        let emb = color_preserving_embed(&t, &cert, &phi, &g, &parts).unwrap();
        for (&v, &w) in emb.vertex_map() {
            assert_eq!(phi.color_of(v), parts.color_of(w));
        }
    }

    #[test]
    fn single_edge_into_any_partite_host() {
        let t = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let cert = tight_order(&t).unwrap();
        let phi = r_partition(&t, &cert).unwrap();
        let (g, parts) = complete_multipartite(&[1, 1, 1]);
        let emb = color_preserving_embed(&t, &cert, &phi, &g, &parts).unwrap();
        emb.validate(&t, &g).unwrap();
    }

    #[test]
    fn codegree_contract_is_checked() {
        let t = p43();
        let cert = tight_order(&t).unwrap();
        let phi = r_partition(&t, &cert).unwrap();
        // complete tripartite with classes of size 3: codegree 3 = t - 1
        let (g, parts) = complete_multipartite(&[3, 3, 3]);
        match color_preserving_embed(&t, &cert, &phi, &g, &parts) {
            Err(Error::CodegreeTooLow { required, found }) => {
                assert_eq!((required, found), (4, 3));
            }
            other => panic!("expected codegree error, got {other:?}"),
        }
    }

    #[test]
    fn partiteness_and_coloring_are_checked() {
        let t = p43();
        let cert = tight_order(&t).unwrap();
        let phi = r_partition(&t, &cert).unwrap();
        let (g, parts) = complete_multipartite(&[4, 4, 4]);

        // a host edge inside one class
        let mut edges = g.edges().to_vec();
        edges.push(vec![0, 1, 2]);
        let bad_g = Hypergraph::new(3, g.vertex_count(), edges).unwrap();
        assert!(matches!(
            color_preserving_embed(&t, &cert, &phi, &bad_g, &parts),
            Err(Error::NotRPartite)
        ));

        // an improper tree coloring
        let mut colors = phi.colors().clone();
        colors.insert(0, phi.color_of(1).unwrap());
        let bad_phi = RPartition::new(3, colors).unwrap();
        assert!(matches!(
            color_preserving_embed(&t, &cert, &bad_phi, &g, &parts),
            Err(Error::ImproperColoring)
        ));
    }
}
