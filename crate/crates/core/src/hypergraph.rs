//! The carrier type: an `r`-uniform hypergraph on vertices `0..n`.
//!
//! Edges are kept in canonical form (each edge strictly sorted, the edge
//! list sorted lexicographically, no duplicates) so equality, hashing and
//! serialization are deterministic. All operations are pure functions of
//! their inputs; values are immutable after construction.
//!
//! # Text format
//!
//! The first non-comment line is `r n`; every following non-empty line is
//! one edge as `r` space-separated 0-based vertex ids. `#` starts a comment
//! that runs to the end of the line. Canonical output sorts vertices within
//! edges and edges lexicographically:
//!
//! ```text
//! 3 6
//! 0 1 2
//! 1 2 3
//! 2 3 4
//! 3 4 5
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An `r`-uniform hypergraph with vertex set `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalizing the edge list. Each edge must
    /// consist of `r` distinct vertices below `n`; duplicate edges collapse.
    pub fn new(r: usize, n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument(
                "uniformity must be at least 1".into(),
            ));
        }
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidArgument(format!(
                    "edge {:?} has {} vertices, expected {}",
                    e,
                    e.len(),
                    r
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "edge {:?} repeats a vertex",
                    e
                )));
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::InvalidArgument(format!(
                        "edge {:?} uses vertex {} outside 0..{}",
                        e, v, n
                    )));
                }
            }
            canon.insert(e);
        }
        Ok(Hypergraph {
            r,
            n,
            edges: canon.into_iter().collect(),
        })
    }

    pub fn empty(r: usize, n: usize) -> Result<Self> {
        Self::new(r, n, std::iter::empty())
    }

    /// All `r`-subsets of `{0..n-1}`, i.e. the complete host.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        if n < r {
            return Err(Error::InvalidArgument(format!(
                "complete hypergraph needs n >= r, got n={n}, r={r}"
            )));
        }
        Self::new(r, n, k_subsets(n, r))
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn contains_edge(&self, e: &[usize]) -> bool {
        let mut key = e.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).is_ok()
    }

    /// Vertices that appear in at least one edge, ascending.
    pub fn non_isolated(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    /// Per-vertex edge degree, indexed by vertex id.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// The shadow: every `(r-1)`-set contained in some edge, sorted.
    pub fn shadow(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for e in &self.edges {
            for d in subsets_without_one(e) {
                out.insert(d);
            }
        }
        out.into_iter().collect()
    }

    pub fn shadow_size(&self) -> usize {
        self.shadow().len()
    }

    /// Degree of every shadow element, as a map from `(r-1)`-set to count.
    pub fn codegree_map(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut map: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for e in &self.edges {
            for d in subsets_without_one(e) {
                *map.entry(d).or_insert(0) += 1;
            }
        }
        map
    }

    /// Number of edges containing the vertex set `d` (0 when `|d| > r`).
    pub fn degree(&self, d: &[usize]) -> usize {
        let mut key = d.to_vec();
        key.sort_unstable();
        key.dedup();
        if key.len() > self.r {
            return 0;
        }
        self.edges.iter().filter(|e| is_subset(&key, e)).count()
    }

    /// The link of `d`: residues `e \ d` over edges containing `d`, as a
    /// hypergraph of uniformity `r - |d|` on the same vertex universe.
    pub fn link(&self, d: &[usize]) -> Result<Hypergraph> {
        let mut key = d.to_vec();
        key.sort_unstable();
        key.dedup();
        if key.len() >= self.r {
            return Err(Error::InvalidArgument(format!(
                "link needs |D| < r, got |D|={} with r={}",
                key.len(),
                self.r
            )));
        }
        let residues = self
            .edges
            .iter()
            .filter(|e| is_subset(&key, e))
            .map(|e| e.iter().copied().filter(|v| !key.contains(v)).collect());
        Hypergraph::new(self.r - key.len(), self.n, residues)
    }

    /// Minimum degree over `p`-sets that lie in at least one edge. Sets in
    /// no edge do not take part in the minimum, so an empty hypergraph (or
    /// `p` outside `1..r`) is an error rather than 0 or infinity.
    pub fn min_p_degree(&self, p: usize) -> Result<usize> {
        if self.edges.is_empty() {
            return Err(Error::EmptyHypergraph);
        }
        if p == 0 || p >= self.r {
            return Err(Error::InvalidArgument(format!(
                "minimum p-degree needs 1 <= p <= r-1, got p={} with r={}",
                p, self.r
            )));
        }
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for e in &self.edges {
            for d in k_subsets_of(e, p) {
                *counts.entry(d).or_insert(0) += 1;
            }
        }
        Ok(*counts.values().min().expect("non-empty hypergraph"))
    }

    /// Sub-hypergraph keeping the edges selected by `keep` (indexed as in
    /// [`Hypergraph::edges`]); same uniformity and vertex universe.
    pub fn sub_hypergraph(&self, keep: impl Fn(usize, &[usize]) -> bool) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(_, e)| e.clone());
        Hypergraph::new(self.r, self.n, edges).expect("subset of valid edges is valid")
    }

    /// Canonical text form; identical structures print identical bytes.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.r, self.n)?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hypergraph(r={}, n={}, edges={:?})",
            self.r, self.n, self.edges
        )
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let mut nums = Vec::new();
            let mut col = 0;
            for tok in line.split_whitespace() {
                // column of the first offending token, 1-based
                col = raw.find(tok).map(|p| p + 1).unwrap_or(1);
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    col,
                    msg: format!("expected a non-negative integer, found {tok:?}"),
                })?;
                nums.push(v);
            }
            match header {
                None => {
                    if nums.len() != 2 {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            col: 1,
                            msg: format!("header must be `r n`, found {} numbers", nums.len()),
                        });
                    }
                    header = Some((nums[0], nums[1]));
                }
                Some((r, _)) => {
                    if nums.len() != r {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            col,
                            msg: format!("edge has {} vertices, expected {}", nums.len(), r),
                        });
                    }
                    edges.push(nums);
                }
            }
        }
        let (r, n) = header.ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "missing `r n` header line".into(),
        })?;
        Hypergraph::new(r, n, edges).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::Parse {
                line: 1,
                col: 1,
                msg,
            },
            other => other,
        })
    }
}

/// True when `small` (sorted) is a subset of `big` (sorted).
pub fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    'outer: for &x in small {
        for &y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// All `k`-subsets of `{0..n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..n).collect();
    k_subsets_of(&all, k)
}

/// All `k`-subsets of a sorted slice, in lexicographic order.
pub fn k_subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance the combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The `r` subsets of an edge obtained by dropping one vertex, sorted order.
pub fn subsets_without_one(e: &[usize]) -> Vec<Vec<usize>> {
    (0..e.len())
        .map(|skip| {
            e.iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
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
    fn shadow_of_complete_host_is_all_pairs() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(k53.edge_count(), 10);
        assert_eq!(k53.shadow_size(), 10);
    }

    #[test]
    fn shadow_of_tight_path() {
        let g = p43();
        // independent oracle: pairs inside each edge, deduplicated
        let mut pairs = std::collections::BTreeSet::new();
        for e in g.edges() {
            for i in 0..3 {
                for j in i + 1..3 {
                    pairs.insert(vec![e[i], e[j]]);
                }
            }
        }
        assert_eq!(g.shadow().len(), pairs.len());
        assert_eq!(g.shadow_size(), 9);
    }

    #[test]
    fn shadow_of_single_edge() {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(g.shadow(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn link_examples() {
        let k43 = Hypergraph::complete(4, 3).unwrap();
        let l = k43.link(&[0]).unwrap();
        assert_eq!(l.uniformity(), 2);
        assert_eq!(l.edge_count(), 3); // triangle on {1,2,3}

        let g = p43();
        let l = g.link(&[0, 1]).unwrap();
        assert_eq!(l.edges(), &[vec![2]]);

        let sparse = Hypergraph::new(3, 10, g.edges().to_vec()).unwrap();
        let l = sparse.link(&[9]).unwrap();
        assert!(l.is_empty());

        assert!(matches!(g.link(&[0, 1, 2]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn degree_examples() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(k53.degree(&[0, 1]), 3);

        let g = p43();
        assert_eq!(g.degree(&[2, 3]), 2);
        assert_eq!(g.degree(&[]), g.edge_count());
        assert_eq!(g.degree(&[0, 5]), 0);
        assert_eq!(g.degree(&[0, 1, 2, 3]), 0); // larger than r
    }

    #[test]
    fn degree_equals_link_edge_count() {
        let g = p43();
        for d in [vec![2], vec![0, 1], vec![3, 4]] {
            assert_eq!(g.degree(&d), g.link(&d).unwrap().edge_count());
        }
    }

    #[test]
    fn min_p_degree_examples() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(k53.min_p_degree(2).unwrap(), 3);

        let g = p43();
        assert_eq!(g.min_p_degree(2).unwrap(), 1); // pair {0,1}
        assert_eq!(g.min_p_degree(1).unwrap(), 1); // endpoint vertex

        let empty = Hypergraph::empty(3, 5).unwrap();
        assert!(matches!(empty.min_p_degree(2), Err(Error::EmptyHypergraph)));
        assert!(matches!(g.min_p_degree(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(g.min_p_degree(3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Hypergraph::new(3, 5, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 5, vec![vec![0, 0, 1]]).is_err());
        assert!(Hypergraph::new(3, 5, vec![vec![0, 1, 5]]).is_err());
        assert!(Hypergraph::new(0, 5, vec![]).is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Hypergraph::new(3, 4, vec![vec![2, 1, 0], vec![0, 1, 2]]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn text_roundtrip_and_diagnostics() {
        let g = p43();
        let text = g.to_text();
        let back: Hypergraph = text.parse().unwrap();
        assert_eq!(g, back);

        let with_comments = "# tight path\n3 6\n0 1 2 # first\n\n1 2 3\n2 3 4\n3 4 5\n";
        let parsed: Hypergraph = with_comments.parse().unwrap();
        assert_eq!(parsed, g);

        let bad = "3 6\n0 1 x\n";
        match bad.parse::<Hypergraph>() {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 5);
            }
            other => panic!("expected parse error, got {other:?}"),
        }

        let short = "3 6\n0 1\n";
        assert!(matches!(
            short.parse::<Hypergraph>(),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn shadow_monotone_under_edge_removal() {
        let g = p43();
        let full = g.shadow_size();
        for skip in 0..g.edge_count() {
            let smaller = g.sub_hypergraph(|i, _| i != skip);
            assert!(smaller.shadow_size() <= full);
        }
    }

    #[test]
    fn k_subsets_lex_order() {
        let s = k_subsets(4, 2);
        assert_eq!(
            s,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert!(k_subsets(3, 5).is_empty());
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
