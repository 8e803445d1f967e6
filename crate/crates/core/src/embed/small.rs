//! Density-driven embedding of tight trees with at most four edges.
//!
//! Whenever `e(G) > ((t-1)/r) |shadow(G)|`, such a tree embeds. The
//! algorithm recurses on uniformity: if some vertex of the tree lies in
//! every edge, pass to its link and to the link of a density-inheriting
//! host vertex. At uniformity 2 the trees are ordinary graph trees and the
//! classical degree arguments are constructive: paths by bounded-depth
//! search, stars by a max-degree vertex, the chair by peeling to minimum
//! degree 2 first. Trees with no such vertex (the 4-edge tight path and
//! some star-shaped trees) fall back to the exhaustive oracle, whose
//! success is guaranteed but not constructive.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::rat_int;
use crate::embed::{dense_link_vertex, find_embedding, Embedding};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tight::tight_order;

pub fn embed_small_tree(g: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    let r = t.uniformity();
    if g.uniformity() != r {
        return Err(Error::UniformityMismatch(r, g.uniformity()));
    }
    if tight_order(t).is_none() {
        return Err(Error::NotTightTree);
    }
    let te = t.edge_count();
    if te > 4 {
        return Err(Error::Unsupported(format!(
            "direct embedding handles at most four edges, got {te}"
        )));
    }
    if rat_int(g.edge_count()) * rat_int(r) <= rat_int(te - 1) * rat_int(g.shadow_size()) {
        return Err(Error::BelowThreshold);
    }
    let emb = embed_inner(g, t)?;
    emb.validate(t, g)?;
    Ok(emb)
}

fn embed_inner(g: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    let r = t.uniformity();
    let te = t.edge_count();
    if r == 2 {
        return embed_graph_tree(g, t);
    }
    if te == 1 {
        let host = g
            .edges()
            .first()
            .ok_or_else(|| Error::invariant("density premise left no edges"))?;
        let map: BTreeMap<usize, usize> = t.edges()[0]
            .iter()
            .copied()
            .zip(host.iter().copied())
            .collect();
        return Ok(Embedding::new(map));
    }
    let degrees = t.vertex_degrees();
    let universal = (0..t.vertex_count()).find(|&v| degrees[v] == te);
    match universal {
        Some(v) => {
            // recurse on both links; the chosen host vertex inherits the
            // density ratio one uniformity down
            let t1 = t.link(&[v])?;
            let (a, g1) = dense_link_vertex(g, &rat_int(te - 1))?;
            let sub = embed_inner(&g1, &t1)?;
            let mut map = sub.vertex_map().clone();
            map.insert(v, a);
            Ok(Embedding::new(map))
        }
        None => find_embedding(t, g)?.ok_or_else(|| {
            Error::invariant("density premise guarantees containment, oracle found none")
        }),
    }
}

/// Uniformity-2 base: classify the tree by degrees and apply the matching
/// constructive argument.
fn embed_graph_tree(g: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    let te = t.edge_count();
    let tdeg = t.vertex_degrees();
    let max_deg = (0..t.vertex_count()).map(|v| tdeg[v]).max().unwrap_or(0);
    if max_deg == te {
        embed_star(g, t)
    } else if max_deg == 2 {
        embed_path(g, t)
    } else {
        embed_chair(g, t)
    }
}

fn adjacency(g: &Hypergraph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.vertex_count()];
    for e in g.edges() {
        adj[e[0]].insert(e[1]);
        adj[e[1]].insert(e[0]);
    }
    adj
}

/// A star with `k` edges sits at any vertex of degree at least `k`; the
/// degree sum `2e > (k-1) |shadow|` provides one.
fn embed_star(g: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    let k = t.edge_count();
    let tdeg = t.vertex_degrees();
    let center_t = (0..t.vertex_count())
        .find(|&v| tdeg[v] == k)
        .expect("star has its center");
    let gdeg = g.vertex_degrees();
    let center_g = (0..g.vertex_count())
        .find(|&v| gdeg[v] >= k)
        .ok_or_else(|| Error::invariant("degree sum guarantees a high-degree vertex"))?;
    let adj = adjacency(g);
    let mut map = BTreeMap::new();
    map.insert(center_t, center_g);
    let leaves_t: Vec<usize> = t
        .non_isolated()
        .into_iter()
        .filter(|&v| v != center_t)
        .collect();
    for (&leaf, &img) in leaves_t.iter().zip(adj[center_g].iter()) {
        map.insert(leaf, img);
    }
    Ok(Embedding::new(map))
}

/// Bounded-depth exhaustive search for a simple path with `k` edges; the
/// density bound makes one exist.
fn embed_path(g: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    let k = t.edge_count();
    let adj = adjacency(g);
    let mut walk: Vec<usize> = Vec::with_capacity(k + 1);
    for start in 0..g.vertex_count() {
        walk.push(start);
        if extend_path(&adj, &mut walk, k + 1) {
            // read the tree's own path order off its endpoints
            let tdeg = t.vertex_degrees();
            let t_adj = adjacency(t);
            let mut seq = vec![t
                .non_isolated()
                .into_iter()
                .find(|&v| tdeg[v] == 1)
                .expect("path endpoint")];
            while seq.len() <= k {
                let last = *seq.last().unwrap();
                let next = t_adj[last]
                    .iter()
                    .copied()
                    .find(|v| !seq.contains(v))
                    .expect("path continues");
                seq.push(next);
            }
            let map: BTreeMap<usize, usize> = seq.into_iter().zip(walk.iter().copied()).collect();
            return Ok(Embedding::new(map));
        }
        walk.pop();
    }
    Err(Error::invariant(
        "density premise guarantees a path of this length",
    ))
}

fn extend_path(adj: &[BTreeSet<usize>], walk: &mut Vec<usize>, want: usize) -> bool {
    if walk.len() == want {
        return true;
    }
    let last = *walk.last().unwrap();
    for &next in &adj[last] {
        if walk.contains(&next) {
            continue;
        }
        walk.push(next);
        if extend_path(adj, walk, want) {
            return true;
        }
        walk.pop();
    }
    false
}

/// The chair (a 3-star with one subdivided leg): peel vertices of degree
/// at most 1, which keeps the density bound, then a vertex of degree >= 4
/// plus a second neighbor of its smallest neighbor do the job.
fn embed_chair(g: &Hypergraph, t: &Hypergraph) -> Result<Embedding> {
    let mut adj = adjacency(g);
    loop {
        let low = (0..adj.len()).find(|&v| adj[v].len() == 1);
        match low {
            Some(v) => {
                let w = *adj[v].iter().next().unwrap();
                adj[v].clear();
                adj[w].remove(&v);
            }
            None => break,
        }
    }
    let center_g = (0..adj.len())
        .find(|&v| adj[v].len() >= 4)
        .ok_or_else(|| Error::invariant("peeled core keeps a degree-4 vertex"))?;
    let nbrs: Vec<usize> = adj[center_g].iter().copied().collect();
    let b1 = nbrs[0];
    let tail_g = adj[b1]
        .iter()
        .copied()
        .find(|&w| w != center_g)
        .ok_or_else(|| Error::invariant("peeled core has minimum degree 2"))?;
    let leaves_g: Vec<usize> = nbrs
        .iter()
        .copied()
        .filter(|&w| w != b1 && w != tail_g)
        .take(2)
        .collect();
    if leaves_g.len() < 2 {
        return Err(Error::invariant(
            "degree-4 vertex leaves two spare neighbors",
        ));
    }

    // tree side: center (degree 3), middle (degree 2), tail, two leaves
    let tdeg = t.vertex_degrees();
    let verts = t.non_isolated();
    let center_t = *verts.iter().find(|&&v| tdeg[v] == 3).expect("chair center");
    let middle_t = *verts.iter().find(|&&v| tdeg[v] == 2).expect("chair middle");
    let t_adj = adjacency(t);
    let tail_t = t_adj[middle_t]
        .iter()
        .copied()
        .find(|&v| v != center_t)
        .expect("chair tail");
    let leaves_t: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| v != center_t && v != middle_t && v != tail_t)
        .collect();

    let mut map = BTreeMap::new();
    map.insert(center_t, center_g);
    map.insert(middle_t, b1);
    map.insert(tail_t, tail_g);
    for (&lt, &lg) in leaves_t.iter().zip(leaves_g.iter()) {
        map.insert(lt, lg);
    }
    Ok(Embedding::new(map))
}
