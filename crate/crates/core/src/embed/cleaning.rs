//! Density-preserving cleanups used ahead of the greedy embeddings.
//!
//! * [`extract_min_codegree`] peels low-codegree shadow sets until every
//!   remaining one has codegree above `q`, keeping `e > q * |shadow|`.
//! * [`dense_link_vertex`] locates a vertex whose link inherits the density
//!   ratio at the next-lower uniformity.
//! * [`rainbow_subgraph`] derandomizes the uniform random `r`-coloring by
//!   the method of conditional expectations, tracked in exact (scaled)
//!   integers, keeping at least `ceil(r!/r^r * e)` rainbow edges.
//! * [`pattern`] sorts a rainbow edge's `r` codegrees ascending.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{rat_int, Rat};
use crate::error::{Error, Result};
use crate::hypergraph::{subsets_without_one, Hypergraph};
use crate::tight::RPartition;

/// Repeatedly deletes all edges through a shadow set of codegree at most
/// `q`. Requires `e(G) > q * |shadow(G)|`; the result then satisfies both
/// `min codegree >= q + 1` and the same density inequality.
pub fn extract_min_codegree(g: &Hypergraph, q: usize) -> Result<Hypergraph> {
    if g.edge_count() <= q * g.shadow_size() {
        return Err(Error::BelowThreshold);
    }
    let mut degree = g.codegree_map();
    let mut by_subset: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        for d in subsets_without_one(e) {
            by_subset.entry(d).or_default().push(i);
        }
    }
    let mut alive = vec![true; g.edge_count()];
    let mut low: BTreeSet<Vec<usize>> = degree
        .iter()
        .filter(|&(_, &c)| c <= q)
        .map(|(d, _)| d.clone())
        .collect();
    while let Some(d) = low.pop_first() {
        if degree[&d] == 0 {
            continue;
        }
        for &i in &by_subset[&d] {
            if !alive[i] {
                continue;
            }
            alive[i] = false;
            for s in subsets_without_one(&g.edges()[i]) {
                let c = degree.get_mut(&s).expect("subset of a live edge");
                *c -= 1;
                if *c <= q && *c > 0 {
                    low.insert(s);
                }
            }
        }
        debug_assert_eq!(degree[&d], 0);
    }
    let out = g.sub_hypergraph(|i, _| alive[i]);
    if out.is_empty() || out.edge_count() <= q * out.shadow_size() {
        return Err(Error::invariant(
            "peeling emptied a hypergraph that satisfied the density premise",
        ));
    }
    debug_assert!(q == 0 || out.min_p_degree(out.uniformity() - 1).unwrap() >= q + 1);
    Ok(out)
}

/// Finds a vertex whose link is at least as dense, relative to its shadow,
/// at uniformity `r-1`: given `e(G) > (alpha/r) |shadow(G)|` with `r >= 3`,
/// returns the first `v` with `e(G_v) > (alpha/(r-1)) |shadow(G_v)|`.
pub fn dense_link_vertex(g: &Hypergraph, alpha: &Rat) -> Result<(usize, Hypergraph)> {
    let r = g.uniformity();
    if r < 3 {
        return Err(Error::InvalidArgument(
            "link descent needs uniformity at least 3".into(),
        ));
    }
    if alpha <= &Rat::from_integer(0.into()) {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    // e(G) > (alpha/r) |shadow|, cross-multiplied to stay in integers
    if rat_int(g.edge_count()) * rat_int(r) <= alpha.clone() * rat_int(g.shadow_size()) {
        return Err(Error::BelowThreshold);
    }
    for v in 0..g.vertex_count() {
        let link = g.link(&[v])?;
        if link.is_empty() {
            continue;
        }
        if rat_int(link.edge_count()) * rat_int(r - 1) > alpha.clone() * rat_int(link.shadow_size())
        {
            return Ok((v, link));
        }
    }
    Err(Error::invariant(
        "no vertex link met the density bound despite the premise",
    ))
}

/// Splits the vertices into `r` classes keeping many edges rainbow (one
/// vertex per class). Assigns vertices one at a time, always choosing the
/// class that maximizes the expected number of rainbow edges under uniform
/// random completion; the expectation is tracked as an exact integer scaled
/// by `r^r`. The output subgraph therefore always has at least
/// `ceil(r!/r^r * e(G))` edges.
pub fn rainbow_subgraph(g: &Hypergraph) -> (RPartition, Hypergraph) {
    let r = g.uniformity();
    let n = g.vertex_count();
    // scaled contribution of an edge with k vertices assigned, no clash:
    // (r-k)! * r^k
    let factorial = |k: usize| -> u64 { (1..=k).map(|x| x as u64).product::<u64>().max(1) };
    let scaled: Vec<u64> = (0..=r)
        .map(|k| factorial(r - k) * (r as u64).pow(k as u32))
        .collect();

    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        for &v in e {
            by_vertex[v].push(i);
        }
    }
    let mut used_mask: Vec<u32> = vec![0; g.edge_count()];
    let mut assigned: Vec<usize> = vec![0; g.edge_count()];
    let mut clashed: Vec<bool> = vec![false; g.edge_count()];
    let mut color: BTreeMap<usize, usize> = BTreeMap::new();

    for v in 0..n {
        let mut best_class = 0;
        let mut best_gain: i64 = i64::MIN;
        for c in 0..r {
            let mut gain: i64 = 0;
            for &i in &by_vertex[v] {
                if clashed[i] {
                    continue;
                }
                let old = scaled[assigned[i]] as i64;
                let new = if used_mask[i] & (1 << c) != 0 {
                    0
                } else {
                    scaled[assigned[i] + 1] as i64
                };
                gain += new - old;
            }
            if gain > best_gain {
                best_gain = gain;
                best_class = c;
            }
        }
        for &i in &by_vertex[v] {
            if clashed[i] {
                continue;
            }
            if used_mask[i] & (1 << best_class) != 0 {
                clashed[i] = true;
            } else {
                used_mask[i] |= 1 << best_class;
                assigned[i] += 1;
            }
        }
        color.insert(v, best_class);
    }

    let parts = RPartition::new(r, color).expect("classes in range");
    let l1 = g.sub_hypergraph(|i, _| !clashed[i] && assigned[i] == r);
    debug_assert!({
        let rf = factorial(r);
        let rr = (r as u64).pow(r as u32);
        (l1.edge_count() as u64) * rr >= rf * g.edge_count() as u64
    });
    (parts, l1)
}

/// The pattern of a rainbow edge: the permutation listing its classes by
/// ascending codegree in `g`, ties broken by ascending class index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn sigma(&self) -> &[usize] {
        &self.0
    }
}

pub fn pattern(g: &Hypergraph, e: &[usize], parts: &RPartition) -> Result<Pattern> {
    pattern_from_codegrees(|residue| g.degree(residue), g.uniformity(), e, parts)
}

/// Pattern computation against a caller-supplied codegree lookup, so bulk
/// callers can reuse one precomputed degree map.
pub(crate) fn pattern_from_codegrees(
    degree_of: impl Fn(&[usize]) -> usize,
    r: usize,
    e: &[usize],
    parts: &RPartition,
) -> Result<Pattern> {
    if e.len() != r || !parts.edge_is_rainbow(e) {
        return Err(Error::InvalidArgument(
            "pattern is defined for rainbow edges only".into(),
        ));
    }
    let mut keyed: Vec<(usize, usize)> = Vec::with_capacity(r);
    for &v in e {
        let class = parts.color_of(v).expect("rainbow edge is fully colored");
        let residue: Vec<usize> = e.iter().copied().filter(|&u| u != v).collect();
        keyed.push((degree_of(&residue), class));
    }
    keyed.sort_unstable();
    Ok(Pattern(keyed.into_iter().map(|(_, c)| c).collect()))
}
