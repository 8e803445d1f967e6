//! Seeded random hypergraphs for fuzz checks. Only the fuzz helpers are
//! randomized; every core algorithm stays deterministic.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::hypergraph::{k_subsets, Hypergraph};

/// Includes each `r`-subset of `{0..n-1}` independently with probability
/// `p_num / p_den`.
pub fn random_hypergraph(
    rng: &mut impl Rng,
    r: usize,
    n: usize,
    p_num: u32,
    p_den: u32,
) -> Hypergraph {
    let edges = k_subsets(n, r)
        .into_iter()
        .filter(|_| rng.random_ratio(p_num, p_den));
    Hypergraph::new(r, n, edges).expect("complete-host subsets are valid edges")
}

/// Same, driven by a fixed seed.
pub fn random_hypergraph_seeded(
    seed: u64,
    r: usize,
    n: usize,
    p_num: u32,
    p_den: u32,
) -> Hypergraph {
    let mut rng = StdRng::seed_from_u64(seed);
    random_hypergraph(&mut rng, r, n, p_num, p_den)
}
