//! Exhaustive containment oracle.
//!
//! Backtracks over tree edges in a maximum-overlap order, so that once the
//! first edge is placed, nearly every later edge is pinned to a small
//! co-neighborhood. Works for any pattern of matching uniformity, tight or
//! not; completeness is what the cross-checks and searches rely on.

use std::collections::BTreeMap;

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Finds an embedding of `t` into `g`, or `None` when there is none.
pub fn find_embedding(t: &Hypergraph, g: &Hypergraph) -> Result<Option<Embedding>> {
    if t.uniformity() != g.uniformity() {
        return Err(Error::UniformityMismatch(t.uniformity(), g.uniformity()));
    }
    if t.edge_count() == 0 {
        return Ok(Some(Embedding::empty()));
    }
    if t.non_isolated().len() > g.vertex_count() || t.edge_count() > g.edge_count() {
        return Ok(None);
    }

    // place edges so each one overlaps the already-placed part as much as
    // possible; for tight trees this recovers a placement order
    let edges = t.edges();
    let mut order: Vec<usize> = vec![0];
    let mut placed: Vec<bool> = vec![false; edges.len()];
    placed[0] = true;
    let mut covered: Vec<usize> = edges[0].clone();
    while order.len() < edges.len() {
        let next = (0..edges.len())
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let overlap = edges[i].iter().filter(|v| covered.contains(v)).count();
                (overlap, std::cmp::Reverse(i))
            })
            .expect("unplaced edge exists");
        placed[next] = true;
        for &v in &edges[next] {
            if !covered.contains(&v) {
                covered.push(v);
            }
        }
        order.push(next);
    }

    let by_vertex: Vec<Vec<usize>> = {
        let mut idx = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            for &v in e {
                idx[v].push(i);
            }
        }
        idx
    };

    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used: BTreeMap<usize, usize> = BTreeMap::new(); // image -> pattern vertex
    if place_edges(t, g, &by_vertex, &order, 0, &mut map, &mut used) {
        let emb = Embedding::new(map);
        debug_assert!(emb.validate(t, g).is_ok());
        Ok(Some(emb))
    } else {
        Ok(None)
    }
}

fn place_edges(
    t: &Hypergraph,
    g: &Hypergraph,
    by_vertex: &[Vec<usize>],
    order: &[usize],
    pos: usize,
    map: &mut BTreeMap<usize, usize>,
    used: &mut BTreeMap<usize, usize>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let e = &t.edges()[order[pos]];
    let mapped: Vec<usize> = e.iter().filter_map(|v| map.get(v).copied()).collect();
    let unmapped: Vec<usize> = e.iter().copied().filter(|v| !map.contains_key(v)).collect();

    // candidate host edges must contain every image already fixed
    let candidates: Vec<usize> = match mapped.first() {
        Some(&img) => by_vertex[img].clone(),
        None => (0..g.edge_count()).collect(),
    };

    'next_edge: for ge_idx in candidates {
        let ge = &g.edges()[ge_idx];
        for &img in &mapped {
            if !ge.contains(&img) {
                continue 'next_edge;
            }
        }
        let free: Vec<usize> = ge.iter().copied().filter(|w| !mapped.contains(w)).collect();
        // the image of this edge is exactly `ge`, so every free slot gets
        // one unmapped pattern vertex; a slot already taken elsewhere kills
        // injectivity
        if free.iter().any(|w| used.contains_key(w)) {
            continue;
        }
        debug_assert_eq!(free.len(), unmapped.len());
        if try_assignments(t, g, by_vertex, order, pos, &unmapped, &free, 0, map, used) {
            return true;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn try_assignments(
    t: &Hypergraph,
    g: &Hypergraph,
    by_vertex: &[Vec<usize>],
    order: &[usize],
    pos: usize,
    unmapped: &[usize],
    free: &[usize],
    k: usize,
    map: &mut BTreeMap<usize, usize>,
    used: &mut BTreeMap<usize, usize>,
) -> bool {
    if k == unmapped.len() {
        return place_edges(t, g, by_vertex, order, pos + 1, map, used);
    }
    let v = unmapped[k];
    for &w in free {
        if used.contains_key(&w) {
            continue;
        }
        map.insert(v, w);
        used.insert(w, v);
        if try_assignments(
            t,
            g,
            by_vertex,
            order,
            pos,
            unmapped,
            free,
            k + 1,
            map,
            used,
        ) {
            return true;
        }
        map.remove(&v);
        used.remove(&w);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p43() -> Hypergraph {
        Hypergraph::new(
            3,
            6,
            vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]],
        )
        .unwrap()
    }

    #[test]
    fn path_into_complete_hosts() {
        let t = p43();
        let k63 = Hypergraph::complete(6, 3).unwrap();
        let emb = find_embedding(&t, &k63).unwrap().expect("fits");
        emb.validate(&t, &k63).unwrap();

        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert!(find_embedding(&t, &k53).unwrap().is_none());
    }

    #[test]
    fn single_edge_into_empty_host() {
        let t = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let g = Hypergraph::empty(3, 7).unwrap();
        assert!(find_embedding(&t, &g).unwrap().is_none());
    }

    #[test]
    fn uniformity_mismatch_is_an_error() {
        let t = Hypergraph::new(2, 3, vec![vec![0, 1]]).unwrap();
        let g = Hypergraph::complete(4, 3).unwrap();
        assert!(matches!(
            find_embedding(&t, &g),
            Err(Error::UniformityMismatch(2, 3))
        ));
    }

    #[test]
    fn empty_pattern_embeds_trivially() {
        let t = Hypergraph::empty(3, 0).unwrap();
        let g = Hypergraph::complete(4, 3).unwrap();
        assert!(find_embedding(&t, &g).unwrap().is_some());
    }

    #[test]
    fn disconnected_patterns_work() {
        let matching = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let k63 = Hypergraph::complete(6, 3).unwrap();
        assert!(find_embedding(&matching, &k63).unwrap().is_some());

        // two disjoint triples need six distinct images
        let small = Hypergraph::complete(5, 3).unwrap();
        assert!(find_embedding(&matching, &small).unwrap().is_none());
    }

    #[test]
    fn freeness_of_an_intersecting_family() {
        // all triples through vertex 0 on seven vertices contain no tight
        // 4-edge path: each edge of the path would need vertex 0
        let star: Vec<Vec<usize>> = crate::hypergraph::k_subsets(7, 3)
            .into_iter()
            .filter(|e| e.contains(&0))
            .collect();
        let g = Hypergraph::new(3, 7, star).unwrap();
        assert!(find_embedding(&p43(), &g).unwrap().is_none());
    }
}
