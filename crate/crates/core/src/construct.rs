//! Generators for the extremal and near-extremal families, plus the greedy
//! shadow-disjoint packing that turns a single free graph into a large free
//! graph on many vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{k_subsets, k_subsets_of, Hypergraph};

/// All `C(n, r)` edges.
pub fn complete_hypergraph(n: usize, r: usize) -> Result<Hypergraph> {
    Hypergraph::complete(n, r)
}

/// Every `r`-set through vertex 0. For `r = 3` this family has
/// `C(n-1, 2)` edges and shadow `C(n, 2)`, so `|shadow| = n/(n-2) * e`.
pub fn ekr_family(n: usize, r: usize) -> Result<Hypergraph> {
    if n < r {
        return Err(Error::InvalidArgument(format!(
            "the intersecting family needs n >= r, got n={n}, r={r}"
        )));
    }
    let rest: Vec<usize> = (1..n).collect();
    let edges = k_subsets_of(&rest, r - 1).into_iter().map(|mut e| {
        e.insert(0, 0);
        e
    });
    Hypergraph::new(r, n, edges)
}

/// An orientation of the complete graph: exactly one arc per vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    q: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Tournament {
    pub fn new(q: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: BTreeSet<(usize, usize)> = arcs.into_iter().collect();
        for &(i, j) in &arcs {
            if i >= q || j >= q || i == j {
                return Err(Error::InvalidArgument(format!("bad arc {i} -> {j}")));
            }
            if arcs.contains(&(j, i)) {
                return Err(Error::InvalidArgument(format!(
                    "both directions present for pair {{{i}, {j}}}"
                )));
            }
        }
        if arcs.len() != q * q.saturating_sub(1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "expected {} arcs, found {}",
                q * q.saturating_sub(1) / 2,
                arcs.len()
            )));
        }
        Ok(Tournament { q, arcs })
    }

    /// The rotational tournament `i -> i + k (mod q)` for `k = 1..=(q-1)/2`;
    /// regular, which needs `q` odd.
    pub fn cyclic(q: usize) -> Result<Self> {
        if q % 2 == 0 {
            return Err(Error::InvalidArgument(
                "a regular rotational tournament needs an odd vertex count".into(),
            ));
        }
        let mut arcs = BTreeSet::new();
        for i in 0..q {
            for k in 1..=(q - 1) / 2 {
                arcs.insert((i, (i + k) % q));
            }
        }
        Tournament::new(q, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.q
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.arcs.iter().filter(|&&(a, _)| a == i).count()
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.q)?;
        for (i, j) in &self.arcs {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

impl FromStr for Tournament {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut q: Option<usize> = None;
        let mut arcs = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let nums: std::result::Result<Vec<usize>, _> =
                line.split_whitespace().map(|t| t.parse()).collect();
            let nums = nums.map_err(|_| Error::Parse {
                line: lineno + 1,
                col: 1,
                msg: "expected integers".into(),
            })?;
            match q {
                None => {
                    if nums.len() != 1 {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            col: 1,
                            msg: "header must be the vertex count".into(),
                        });
                    }
                    q = Some(nums[0]);
                }
                Some(_) => {
                    if nums.len() != 2 {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            col: 1,
                            msg: "arc lines are `i j`".into(),
                        });
                    }
                    arcs.push((nums[0], nums[1]));
                }
            }
        }
        Tournament::new(
            q.ok_or(Error::Parse {
                line: 1,
                col: 1,
                msg: "missing vertex count".into(),
            })?,
            arcs,
        )
    }
}

/// Triples `g` with two vertices in `V_i` and one in `V_j` for some arc
/// `i -> j`, where `V_k = {3k, 3k+1, 3k+2}`. Always `9 * #arcs` edges; the
/// shadow misses the three internal pairs of every sink's triple.
pub fn tournament_family(n: usize, d: &Tournament) -> Result<Hypergraph> {
    if n % 3 != 0 {
        return Err(Error::InvalidArgument(format!(
            "the triple-block family needs 3 | n, got n={n}"
        )));
    }
    if d.vertex_count() != n / 3 {
        return Err(Error::InvalidArgument(format!(
            "tournament has {} vertices, expected {}",
            d.vertex_count(),
            n / 3
        )));
    }
    let block = |k: usize| [3 * k, 3 * k + 1, 3 * k + 2];
    let mut edges = Vec::new();
    for (i, j) in d.arcs() {
        let vi = block(i);
        let vj = block(j);
        for pair in k_subsets_of(&vi, 2) {
            for &single in &vj {
                let mut e = pair.clone();
                e.push(single);
                edges.push(e);
            }
        }
    }
    Hypergraph::new(3, n, edges)
}

/// `n/t` vertex-disjoint complete graphs on `t` vertices each: the sharp
/// example with `n(t-1)/2` edges and no tree of `t` edges.
pub fn disjoint_cliques(n: usize, t: usize) -> Result<Hypergraph> {
    if t == 0 || n % t != 0 {
        return Err(Error::InvalidArgument(format!(
            "disjoint cliques need t | n, got n={n}, t={t}"
        )));
    }
    let mut edges = Vec::new();
    for b in 0..n / t {
        let verts: Vec<usize> = (b * t..(b + 1) * t).collect();
        edges.extend(k_subsets_of(&verts, 2));
    }
    Hypergraph::new(2, n, edges)
}

/// A greedy packing of copies of a template with pairwise disjoint shadows.
#[derive(Clone, Debug)]
pub struct PackingResult {
    pub vertex_sets: Vec<Vec<usize>>,
    pub union: Hypergraph,
    pub m: usize,
}

impl PackingResult {
    /// Re-checks the packing against its template: the placed copies must
    /// have pairwise disjoint shadows and union to the recorded graph.
    pub fn validate(&self, template: &Hypergraph) -> Result<()> {
        let mut union_edges: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut shadows: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for vs in &self.vertex_sets {
            let copy = place_copy(template, vs, self.union.vertex_count())?;
            union_edges.extend(copy.edges().iter().cloned());
            shadows.push(copy.shadow().into_iter().collect());
        }
        for i in 0..shadows.len() {
            for j in i + 1..shadows.len() {
                if !shadows[i].is_disjoint(&shadows[j]) {
                    return Err(Error::invariant(format!(
                        "copies {i} and {j} share a shadow element"
                    )));
                }
            }
        }
        let expected: Vec<Vec<usize>> = union_edges.into_iter().collect();
        if expected != self.union.edges() {
            return Err(Error::invariant("union does not match the placed copies"));
        }
        if self.m != self.vertex_sets.len() {
            return Err(Error::invariant("copy count mismatch"));
        }
        Ok(())
    }
}

/// Places the template on the given sorted vertex set, order-preserving.
fn place_copy(template: &Hypergraph, vs: &[usize], n: usize) -> Result<Hypergraph> {
    let support = template.non_isolated();
    if support.len() != vs.len() {
        return Err(Error::InvalidArgument(
            "vertex set size does not match the template support".into(),
        ));
    }
    let map: BTreeMap<usize, usize> = support.iter().copied().zip(vs.iter().copied()).collect();
    Hypergraph::new(
        template.uniformity(),
        n,
        template
            .edges()
            .iter()
            .map(|e| e.iter().map(|v| map[v]).collect()),
    )
}

/// Greedy first-fit packing over all candidate vertex sets in
/// lexicographic order. A candidate joins when, against every placed copy,
/// the vertex sets share fewer than `r-1` vertices, or exactly `r-1`
/// vertices that are a shadow element of neither copy. `budget` caps how
/// many candidates are examined.
pub fn shadow_disjoint_packing(g: &Hypergraph, n: usize, budget: u64) -> Result<PackingResult> {
    let support = g.non_isolated();
    let candidates = k_subsets(n, support.len());
    shadow_disjoint_packing_with_candidates(g, n, candidates.iter().cloned(), budget)
}

/// Same greedy, over a caller-supplied candidate order (used for explicit
/// designs such as grid rows and columns).
pub fn shadow_disjoint_packing_with_candidates(
    g: &Hypergraph,
    n: usize,
    candidates: impl IntoIterator<Item = Vec<usize>>,
    budget: u64,
) -> Result<PackingResult> {
    let r = g.uniformity();
    let support = g.non_isolated();
    let mut placed: Vec<(Vec<usize>, BTreeSet<Vec<usize>>)> = Vec::new();
    let mut union_edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    if !g.is_empty() {
        let mut examined = 0u64;
        for mut cand in candidates {
            if examined >= budget {
                break;
            }
            examined += 1;
            cand.sort_unstable();
            cand.dedup();
            if cand.len() != support.len() || cand.iter().any(|&v| v >= n) {
                continue;
            }
            let copy = place_copy(g, &cand, n)?;
            let shadow: BTreeSet<Vec<usize>> = copy.shadow().into_iter().collect();
            let ok = placed.iter().all(|(vs, sh)| {
                let inter: Vec<usize> = cand.iter().copied().filter(|v| vs.contains(v)).collect();
                if inter.len() < r - 1 {
                    true
                } else if inter.len() == r - 1 {
                    !sh.contains(&inter) && !shadow.contains(&inter)
                } else {
                    false
                }
            });
            if ok {
                union_edges.extend(copy.edges().iter().cloned());
                placed.push((cand, shadow));
            }
        }
    }
    let vertex_sets: Vec<Vec<usize>> = placed.into_iter().map(|(vs, _)| vs).collect();
    let m = vertex_sets.len();
    let union = Hypergraph::new(r, n, union_edges)?;
    let result = PackingResult {
        vertex_sets,
        union,
        m,
    };
    result.validate(g)?;
    Ok(result)
}

/// The rows and columns of a `side x side` grid on `side^2` vertices, as
/// candidate vertex sets: any two share at most one vertex.
pub fn grid_rows_and_columns(side: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * side);
    for i in 0..side {
        out.push((i * side..(i + 1) * side).collect());
    }
    for j in 0..side {
        out.push((0..side).map(|i| i * side + j).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn complete_counts() {
        assert_eq!(complete_hypergraph(5, 3).unwrap().edge_count(), 10);
        assert_eq!(complete_hypergraph(3, 3).unwrap().edge_count(), 1);
        let k83 = complete_hypergraph(8, 3).unwrap();
        assert_eq!(k83.edge_count(), 56);
        assert_eq!(k83.shadow_size(), 28);
        assert!(complete_hypergraph(2, 3).is_err());
    }

    #[test]
    fn intersecting_family_identity() {
        let g = ekr_family(5, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.shadow_size(), 10);
        // |shadow| = n/(n-2) * e
        assert_eq!(rat_int(10), rat_int(5) / rat_int(3) * rat_int(6));

        let g = ekr_family(7, 3).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.shadow_size(), 21);

        assert!(ekr_family(2, 3).is_err());
    }

    #[test]
    fn cyclic_tournament_is_regular() {
        let d = Tournament::cyclic(5).unwrap();
        for i in 0..5 {
            assert_eq!(d.out_degree(i), 2);
        }
        assert!(Tournament::cyclic(4).is_err());
    }

    #[test]
    fn tournament_text_roundtrip() {
        let d = Tournament::cyclic(3).unwrap();
        let text = d.to_string();
        let back: Tournament = text.parse().unwrap();
        assert_eq!(d, back);

        assert!("3\n0 1\n1 0\n0 2\n".parse::<Tournament>().is_err());
        assert!("3\n0 1\n".parse::<Tournament>().is_err());
    }

    #[test]
    fn triple_block_family_statistics() {
        let d = Tournament::cyclic(3).unwrap();
        let g = tournament_family(9, &d).unwrap();
        assert_eq!(g.edge_count(), 27);
        assert_eq!(g.shadow_size(), 36); // all pairs: no sink

        // a single arc on two blocks leaves the sink block's pairs uncovered
        let single = Tournament::new(2, vec![(0, 1)]).unwrap();
        let g = tournament_family(6, &single).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.shadow_size(), 12);

        assert!(tournament_family(7, &d).is_err());
    }

    #[test]
    fn clique_unions() {
        let g = disjoint_cliques(8, 4).unwrap();
        assert_eq!(g.edge_count(), 12);
        // the longest path stops at t-1 edges: a component has t vertices
        let p3 = Hypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let p4 =
            Hypergraph::new(2, 5, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        assert!(crate::embed::find_embedding(&p3, &g).unwrap().is_some());
        assert!(crate::embed::find_embedding(&p4, &g).unwrap().is_none());
        let g = disjoint_cliques(4, 4).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(disjoint_cliques(7, 4).is_err());
    }

    #[test]
    fn grid_packing_of_the_complete_five_vertex_host() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        let pack =
            shadow_disjoint_packing_with_candidates(&k53, 25, grid_rows_and_columns(5), u64::MAX)
                .unwrap();
        assert_eq!(pack.m, 10);
        assert_eq!(pack.union.edge_count(), 100);
        assert_eq!(pack.union.shadow_size(), 100);
        pack.validate(&k53).unwrap();
    }

    #[test]
    fn greedy_packing_of_single_edges_is_a_partial_design() {
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let pack = shadow_disjoint_packing(&single, 9, u64::MAX).unwrap();
        // copies may share one vertex, so the greedy packs a partial triple
        // system denser than three disjoint edges
        assert!(pack.m >= 3);
        assert_eq!(pack.m, 8);
        pack.validate(&single).unwrap();

        let too_small = shadow_disjoint_packing(&single, 2, u64::MAX).unwrap();
        assert_eq!(too_small.m, 0);
        assert!(too_small.union.is_empty());
    }

    #[test]
    fn packing_respects_the_budget() {
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let pack = shadow_disjoint_packing(&single, 9, 1).unwrap();
        assert_eq!(pack.m, 1);
    }
}
