//! Property tests for the structural invariants: the weight identity, the
//! sorted codegree bound, link/degree consistency, shadow monotonicity,
//! round-trips, and the cleaning-stage contracts.

use proptest::prelude::*;

use tighttree::arith::{rat_int, Rat};
use tighttree::embed::{dense_link_vertex, embed_bounded_trunk, extract_min_codegree};
use tighttree::error::Error;
use tighttree::hypergraph::{subsets_without_one, Hypergraph};
use tighttree::random::random_hypergraph_seeded;
use tighttree::tight::{enumerate_tight_trees, trunk_number};
use tighttree::weights::default_weights;

fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=4, any::<u64>(), 1u32..=3).prop_map(|(r, seed, dens)| {
        let n = r + 2 + (seed % 6) as usize;
        random_hypergraph_seeded(seed, r, n, dens, 4)
    })
}

proptest! {
    #[test]
    fn total_edge_weight_equals_shadow_size(g in arb_hypergraph()) {
        prop_assume!(!g.is_empty());
        let w = default_weights(&g).unwrap();
        prop_assert_eq!(w.total_edge_weight(), rat_int(g.shadow_size()));
    }

    #[test]
    fn sorted_codegrees_beat_their_rank(g in arb_hypergraph()) {
        prop_assume!(!g.is_empty());
        let degrees = g.codegree_map();
        for e in g.edges() {
            let mut ds: Vec<usize> = subsets_without_one(e)
                .into_iter()
                .map(|d| degrees[&d])
                .collect();
            ds.sort_unstable();
            let s: Rat = ds
                .iter()
                .map(|&d| rat_int(1) / rat_int(d))
                .fold(rat_int(0), |a, b| a + b);
            for (i, &d) in ds.iter().enumerate() {
                // d_i >= (i+1)/s, i.e. d_i * s >= i+1
                prop_assert!(rat_int(d) * s.clone() >= rat_int(i + 1));
            }
        }
    }

    #[test]
    fn degree_agrees_with_link_size(g in arb_hypergraph(), pick in any::<u64>()) {
        prop_assume!(!g.is_empty());
        let e = &g.edges()[(pick % g.edge_count() as u64) as usize];
        for d in subsets_without_one(e) {
            prop_assert_eq!(g.degree(&d), g.link(&d).unwrap().edge_count());
        }
        let v = [e[0]];
        prop_assert_eq!(g.degree(&v), g.link(&v).unwrap().edge_count());
    }

    #[test]
    fn removing_an_edge_never_grows_the_shadow(g in arb_hypergraph(), pick in any::<u64>()) {
        prop_assume!(!g.is_empty());
        let skip = (pick % g.edge_count() as u64) as usize;
        let smaller = g.sub_hypergraph(|i, _| i != skip);
        prop_assert!(smaller.shadow_size() <= g.shadow_size());
        for d in smaller.shadow() {
            prop_assert!(g.shadow().contains(&d));
        }
    }

    #[test]
    fn text_form_roundtrips(g in arb_hypergraph()) {
        let back: Hypergraph = g.to_text().parse().unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn peeling_contract_over_random_inputs() {
    let mut tested = 0;
    for seed in 0..300 {
        let g = random_hypergraph_seeded(seed, 3, 7, 3, 4);
        if g.is_empty() {
            continue;
        }
        for q in 1..=2 {
            if g.edge_count() <= q * g.shadow_size() {
                assert!(matches!(
                    extract_min_codegree(&g, q),
                    Err(Error::BelowThreshold)
                ));
                continue;
            }
            let out = extract_min_codegree(&g, q).unwrap();
            assert!(out.min_p_degree(2).unwrap() >= q + 1, "seed {seed} q {q}");
            assert!(out.edge_count() > q * out.shadow_size());
            tested += 1;
        }
    }
    assert!(tested > 20, "the sweep should hit dense instances");
}

#[test]
fn link_descent_contract_just_under_the_supremum() {
    let mut tested = 0;
    for seed in 0..200 {
        let g = random_hypergraph_seeded(seed, 3, 8, 4, 5);
        if g.is_empty() {
            continue;
        }
        // the premise e > (alpha/3) |shadow| holds with alpha slightly
        // below 3 e / |shadow|
        let alpha =
            rat_int(3 * g.edge_count()) / rat_int(g.shadow_size()) * (rat_int(999) / rat_int(1000));
        let (v, link) = dense_link_vertex(&g, &alpha).unwrap();
        assert!(!link.is_empty());
        assert_eq!(link.edge_count(), g.degree(&[v]));
        assert!(
            rat_int(link.edge_count()) * rat_int(2) > alpha * rat_int(link.shadow_size()),
            "seed {seed}"
        );
        tested += 1;
    }
    assert!(tested > 100);
}

#[test]
fn trunk_pipeline_succeeds_on_thinned_dense_hosts() {
    // star-shaped trees have threshold (t-1)/r with no error term, so
    // random near-complete hosts on few vertices already qualify
    let mut tested = 0;
    for t_edges in 2..=4 {
        for tree in enumerate_tight_trees(3, t_edges).unwrap() {
            let (c, trunk) = trunk_number(&tree).unwrap();
            if c != 1 {
                continue;
            }
            for seed in 0..40 {
                let g = random_hypergraph_seeded(seed, 3, 8, 9, 10);
                if rat_int(g.edge_count()) * rat_int(3)
                    <= rat_int(t_edges - 1) * rat_int(g.shadow_size())
                {
                    continue;
                }
                let (emb, trace) = embed_bounded_trunk(&g, &tree, &trunk)
                    .unwrap_or_else(|e| panic!("seed {seed}, tree {tree:?}: {e}"));
                emb.validate(&tree, &g).unwrap();
                trace.verify(&g, &tree, &trunk).unwrap();
                tested += 1;
            }
        }
    }
    assert!(tested > 100);
}
