//! Cross-checks the branch-and-bound engine against an independent
//! brute-force scan, and freezes the small exact values as regression
//! constants.

use tighttree::embed::find_embedding;
use tighttree::hypergraph::{k_subsets, Hypergraph};
use tighttree::search::{beta_exact, turan_exact, SearchOptions};

fn p43() -> Hypergraph {
    Hypergraph::new(
        3,
        6,
        vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]],
    )
    .unwrap()
}

/// Independent oracle: enumerate every tree-free edge subset recursively,
/// re-checking freeness with the embedding oracle at each extension, with
/// a simple remaining-slots cutoff. Shares no code with the engine's copy
/// tables or kill lists.
fn turan_brute(n: usize, t: &Hypergraph) -> usize {
    let slots = k_subsets(n, t.uniformity());
    let mut best = 0;
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn recurse(
        slots: &[Vec<usize>],
        idx: usize,
        current: &mut Vec<Vec<usize>>,
        best: &mut usize,
        n: usize,
        t: &Hypergraph,
    ) {
        if current.len() > *best {
            *best = current.len();
        }
        if idx == slots.len() || current.len() + (slots.len() - idx) <= *best {
            return;
        }
        // try including slot idx
        current.push(slots[idx].clone());
        let g = Hypergraph::new(t.uniformity(), n, current.clone()).unwrap();
        if find_embedding(t, &g).unwrap().is_none() {
            recurse(slots, idx + 1, current, best, n, t);
        }
        current.pop();
        recurse(slots, idx + 1, current, best, n, t);
    }
    recurse(&slots, 0, &mut current, &mut best, n, t);
    best
}

#[test]
fn engine_matches_brute_force_for_the_tight_path() {
    for n in [5, 6] {
        let fast = turan_exact(n, &p43(), &SearchOptions::default()).unwrap();
        assert!(fast.exhaustive);
        assert_eq!(fast.max_edges, turan_brute(n, &p43()), "n = {n}");
    }
}

#[test]
fn engine_matches_brute_force_for_small_trees() {
    let two = Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
    let star = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).unwrap();
    for (t, n) in [(&two, 5), (&two, 6), (&star, 6)] {
        let fast = turan_exact(n, t, &SearchOptions::default()).unwrap();
        assert!(fast.exhaustive);
        assert_eq!(fast.max_edges, turan_brute(n, t), "n = {n}");
    }
}

#[test]
fn frozen_tight_path_maxima() {
    // exact values computed by this engine and cross-checked against the
    // plain scan (n <= 6); kept as regression constants
    for (n, expected) in [(5, 10), (6, 11), (7, 17)] {
        let res = turan_exact(n, &p43(), &SearchOptions::default()).unwrap();
        assert!(res.exhaustive);
        assert_eq!(res.max_edges, expected, "n = {n}");
    }
}

#[test]
fn frozen_tight_path_maximum_n8() {
    let res = turan_exact(
        8,
        &p43(),
        &SearchOptions {
            orbit_pruning: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(res.exhaustive);
    assert_eq!(res.max_edges, 26);
}

#[test]
fn searches_are_reproducible() {
    let a = turan_exact(6, &p43(), &SearchOptions::default()).unwrap();
    let b = turan_exact(6, &p43(), &SearchOptions::default()).unwrap();
    assert_eq!(a.max_edges, b.max_edges);
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.nodes_explored, b.nodes_explored);

    let a = beta_exact(5, &p43(), &SearchOptions::default()).unwrap();
    let b = beta_exact(5, &p43(), &SearchOptions::default()).unwrap();
    assert_eq!(a.best_ratio, b.best_ratio);
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.nodes_explored, b.nodes_explored);
}

#[test]
fn exhaustive_witnesses_are_saturated() {
    // adding any absent edge to the witness must create the tree
    for n in [5, 6] {
        let res = turan_exact(n, &p43(), &SearchOptions::default()).unwrap();
        let complete = Hypergraph::complete(n, 3).unwrap();
        for e in complete.edges() {
            if res.witness.contains_edge(e) {
                continue;
            }
            let mut edges = res.witness.edges().to_vec();
            edges.push(e.clone());
            let bigger = Hypergraph::new(3, n, edges).unwrap();
            assert!(
                find_embedding(&p43(), &bigger).unwrap().is_some(),
                "witness for n = {n} was not maximal at edge {e:?}"
            );
        }
    }
}

#[test]
fn loose_path_witness_on_eight_vertices() {
    // the 4-edge path whose edges overlap in single vertices spans nine
    // vertices, so the complete 8-vertex host is free of it and pushes
    // the edge/shadow ratio to 2
    let loose = Hypergraph::new(
        3,
        9,
        vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6], vec![6, 7, 8]],
    )
    .unwrap();
    let k83 = Hypergraph::complete(8, 3).unwrap();
    assert!(find_embedding(&loose, &k83).unwrap().is_none());
    assert_eq!(k83.edge_count(), 56);
    assert_eq!(k83.shadow_size(), 28);
}
