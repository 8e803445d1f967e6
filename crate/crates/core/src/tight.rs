//! Tight trees: recognition, certificates, partitions, trunks.
//!
//! A tight `r`-tree is an `r`-graph whose edges can be ordered so that each
//! edge after the first brings in exactly one vertex never seen before,
//! while its other `r-1` vertices sit inside a single earlier edge. The
//! ordering, the new vertex of each step, and the hosting edge form a
//! checkable certificate ([`TightTreeCert`]). A trunk is a tight subtree
//! that can head such an ordering while every remaining edge meets some
//! trunk edge in `r-1` vertices; the trunk number `c(T)` is the smallest
//! possible trunk size.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hypergraph::{is_subset, k_subsets_of, Hypergraph};

/// One placement step of a certificate: which vertex the edge introduced
/// and which earlier position hosts its other `r-1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CertStep {
    pub new_vertex: usize,
    pub host_pos: usize,
}

/// A verified placement order for a tight tree. `edge_order[0]` seeds the
/// tree; `steps[i-1]` explains `edge_order[i]`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TightTreeCert {
    pub edge_order: Vec<usize>,
    pub steps: Vec<CertStep>,
}

impl TightTreeCert {
    /// Independent re-check of the defining conditions. Used by tests and
    /// by every consumer that receives a certificate from elsewhere.
    pub fn validate(&self, t: &Hypergraph) -> Result<()> {
        let m = t.edge_count();
        if m == 0 {
            return Err(Error::InvalidCertificate("tree has no edges".into()));
        }
        if self.edge_order.len() != m || self.steps.len() + 1 != m {
            return Err(Error::InvalidCertificate("length mismatch".into()));
        }
        let mut seen = vec![false; m];
        for &i in &self.edge_order {
            if i >= m || seen[i] {
                return Err(Error::InvalidCertificate(
                    "edge order is not a permutation".into(),
                ));
            }
            seen[i] = true;
        }
        let edges = t.edges();
        let mut used: BTreeSet<usize> = edges[self.edge_order[0]].iter().copied().collect();
        for (pos, step) in self.steps.iter().enumerate() {
            let pos = pos + 1;
            let e = &edges[self.edge_order[pos]];
            if step.host_pos >= pos {
                return Err(Error::InvalidCertificate(format!(
                    "step {pos} hosts from a later position"
                )));
            }
            if !e.contains(&step.new_vertex) {
                return Err(Error::InvalidCertificate(format!(
                    "step {pos}: vertex {} not in its edge",
                    step.new_vertex
                )));
            }
            if used.contains(&step.new_vertex) {
                return Err(Error::InvalidCertificate(format!(
                    "step {pos}: vertex {} is not new",
                    step.new_vertex
                )));
            }
            let rest: Vec<usize> = e
                .iter()
                .copied()
                .filter(|&v| v != step.new_vertex)
                .collect();
            let host = &edges[self.edge_order[step.host_pos]];
            if !is_subset(&rest, host) {
                return Err(Error::InvalidCertificate(format!(
                    "step {pos}: residue not inside host edge"
                )));
            }
            used.extend(e.iter().copied());
        }
        if used.len() != t.uniformity() + m - 1 {
            return Err(Error::InvalidCertificate("vertex count off".into()));
        }
        Ok(())
    }

    /// Structured report: the ordered edges with each step's new vertex and
    /// host index.
    pub fn report(&self, t: &Hypergraph) -> serde_json::Value {
        let edges = t.edges();
        let ordered: Vec<&Vec<usize>> = self.edge_order.iter().map(|&i| &edges[i]).collect();
        serde_json::json!({
            "ordered_edges": ordered,
            "steps": self.steps,
        })
    }
}

/// Searches for a placement order by backtracking: the next edge must have
/// exactly one unused vertex and its residue inside one earlier edge. Pure
/// greed is not enough, since a bad early pick can dead-end, so failed
/// branches unwind. Returns `None` when no order exists (not a tight tree).
pub fn tight_order(t: &Hypergraph) -> Option<TightTreeCert> {
    let m = t.edge_count();
    if m == 0 {
        return None;
    }
    // a tight tree with t edges spans exactly r + t - 1 vertices
    if t.non_isolated().len() != t.uniformity() + m - 1 {
        return None;
    }
    let edges = t.edges();
    for start in 0..m {
        let mut order = vec![start];
        let mut steps = Vec::new();
        let mut used: BTreeSet<usize> = edges[start].iter().copied().collect();
        if extend_order(t, &mut order, &mut steps, &mut used) {
            return Some(TightTreeCert {
                edge_order: order,
                steps,
            });
        }
    }
    None
}

fn extend_order(
    t: &Hypergraph,
    order: &mut Vec<usize>,
    steps: &mut Vec<CertStep>,
    used: &mut BTreeSet<usize>,
) -> bool {
    let m = t.edge_count();
    if order.len() == m {
        return true;
    }
    let edges = t.edges();
    for cand in 0..m {
        if order.contains(&cand) {
            continue;
        }
        let e = &edges[cand];
        let fresh: Vec<usize> = e.iter().copied().filter(|v| !used.contains(v)).collect();
        if fresh.len() != 1 {
            continue;
        }
        let new_vertex = fresh[0];
        let rest: Vec<usize> = e.iter().copied().filter(|&v| v != new_vertex).collect();
        let host_pos = match order
            .iter()
            .position(|&prev| is_subset(&rest, &edges[prev]))
        {
            Some(p) => p,
            None => continue,
        };
        order.push(cand);
        steps.push(CertStep {
            new_vertex,
            host_pos,
        });
        used.insert(new_vertex);
        if extend_order(t, order, steps, used) {
            return true;
        }
        used.remove(&new_vertex);
        steps.pop();
        order.pop();
    }
    false
}

/// Convenience wrapper around [`tight_order`].
pub fn is_tight_tree(t: &Hypergraph) -> bool {
    tight_order(t).is_some()
}

/// A proper `r`-coloring: every edge uses all `r` colors exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPartition {
    r: usize,
    color: BTreeMap<usize, usize>,
}

impl RPartition {
    pub fn new(r: usize, color: BTreeMap<usize, usize>) -> Result<Self> {
        if color.values().any(|&c| c >= r) {
            return Err(Error::InvalidArgument("color out of range".into()));
        }
        Ok(RPartition { r, color })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.color.get(&v).copied()
    }

    pub fn colors(&self) -> &BTreeMap<usize, usize> {
        &self.color
    }

    /// Color classes as sorted vertex lists, indexed by color.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.r];
        for (&v, &c) in &self.color {
            out[c].push(v);
        }
        out
    }

    /// True when every edge of `g` sees each color exactly once.
    pub fn is_proper_for(&self, g: &Hypergraph) -> bool {
        g.edges().iter().all(|e| self.edge_is_rainbow(e))
    }

    pub fn edge_is_rainbow(&self, e: &[usize]) -> bool {
        let mut hit = vec![false; self.r];
        for &v in e {
            match self.color_of(v) {
                Some(c) if !hit[c] => hit[c] = true,
                _ => return false,
            }
        }
        true
    }

    /// Renames colors: new color of `v` is `perm[old color of v]`.
    pub fn relabel(&self, perm: &[usize]) -> RPartition {
        RPartition {
            r: self.r,
            color: self.color.iter().map(|(&v, &c)| (v, perm[c])).collect(),
        }
    }

    /// Do the two colorings induce the same partition of the vertex set,
    /// up to renaming colors?
    pub fn same_up_to_renaming(&self, other: &RPartition) -> bool {
        if self.r != other.r || self.color.len() != other.color.len() {
            return false;
        }
        let mut fwd: BTreeMap<usize, usize> = BTreeMap::new();
        let mut bwd: BTreeMap<usize, usize> = BTreeMap::new();
        for (&v, &c) in &self.color {
            let Some(d) = other.color_of(v) else {
                return false;
            };
            if *fwd.entry(c).or_insert(d) != d || *bwd.entry(d).or_insert(c) != c {
                return false;
            }
        }
        true
    }
}

/// The unique proper `r`-coloring of a certified tight tree: the seed edge
/// gets colors in ascending vertex order, and every new vertex inherits the
/// color of the host-edge vertex it replaces.
pub fn r_partition(t: &Hypergraph, cert: &TightTreeCert) -> Result<RPartition> {
    cert.validate(t).map_err(|e| {
        Error::InvalidCertificate(format!("partition needs a valid certificate: {e}"))
    })?;
    let edges = t.edges();
    let r = t.uniformity();
    let mut color: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, &v) in edges[cert.edge_order[0]].iter().enumerate() {
        color.insert(v, c);
    }
    for (pos, step) in cert.steps.iter().enumerate() {
        let e = &edges[cert.edge_order[pos + 1]];
        let host = &edges[cert.edge_order[step.host_pos]];
        let rest: Vec<usize> = e
            .iter()
            .copied()
            .filter(|&v| v != step.new_vertex)
            .collect();
        let replaced = host
            .iter()
            .copied()
            .find(|v| !rest.contains(v))
            .expect("host has r vertices, residue r-1");
        let c = color[&replaced];
        color.insert(step.new_vertex, c);
    }
    let partition = RPartition::new(r, color)?;
    debug_assert!(partition.is_proper_for(t));
    Ok(partition)
}

/// A minimum trunk witness: the trunk edges, a full placement order that
/// lists them first, and the host map sending every remaining edge to a
/// trunk edge meeting it in `r-1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrunkCert {
    pub trunk_edges: Vec<usize>,
    pub full_order: TightTreeCert,
    pub alpha: BTreeMap<usize, usize>,
}

impl TrunkCert {
    pub fn trunk_size(&self) -> usize {
        self.trunk_edges.len()
    }

    /// The trunk as a hypergraph on the same universe.
    pub fn trunk_hypergraph(&self, t: &Hypergraph) -> Hypergraph {
        t.sub_hypergraph(|i, _| self.trunk_edges.contains(&i))
    }

    /// Re-checks every defining condition against `t`.
    pub fn validate(&self, t: &Hypergraph) -> Result<()> {
        self.full_order.validate(t)?;
        let m = t.edge_count();
        let c = self.trunk_edges.len();
        if c == 0 || c > m {
            return Err(Error::InvalidCertificate("empty trunk".into()));
        }
        // trunk edges come first in the full order
        let head: BTreeSet<usize> = self.full_order.edge_order[..c].iter().copied().collect();
        if head != self.trunk_edges.iter().copied().collect() {
            return Err(Error::InvalidCertificate(
                "trunk edges are not the head of the order".into(),
            ));
        }
        // the trunk alone is a tight tree
        let trunk = self.trunk_hypergraph(t);
        if !is_tight_tree(&trunk) {
            return Err(Error::InvalidCertificate(
                "trunk is not a tight subtree".into(),
            ));
        }
        // every other edge meets its assigned trunk edge in r-1 vertices
        let r = t.uniformity();
        let edges = t.edges();
        for i in 0..m {
            if self.trunk_edges.contains(&i) {
                continue;
            }
            let &a = self
                .alpha
                .get(&i)
                .ok_or_else(|| Error::InvalidCertificate(format!("edge {i} missing a host")))?;
            if !self.trunk_edges.contains(&a) {
                return Err(Error::InvalidCertificate(format!(
                    "edge {i} assigned to a non-trunk edge"
                )));
            }
            let inter = edges[i].iter().filter(|v| edges[a].contains(v)).count();
            if inter != r - 1 {
                return Err(Error::InvalidCertificate(format!(
                    "edge {i} meets its trunk edge in {inter} vertices, expected {}",
                    r - 1
                )));
            }
        }
        Ok(())
    }
}

/// Computes the trunk number `c(T)` with a witness, by exhausting candidate
/// trunk subsets in increasing size (so the first success is minimum).
pub fn trunk_number(t: &Hypergraph) -> Result<(usize, TrunkCert)> {
    if tight_order(t).is_none() {
        return Err(Error::NotTightTree);
    }
    let m = t.edge_count();
    let all: Vec<usize> = (0..m).collect();
    for size in 1..=m {
        for subset in k_subsets_of(&all, size) {
            if let Some(cert) = try_trunk(t, &subset) {
                return Ok((size, cert));
            }
        }
    }
    unreachable!("the full edge set is always a trunk of a tight tree");
}

/// Validates one candidate trunk subset and assembles the witness.
fn try_trunk(t: &Hypergraph, subset: &[usize]) -> Option<TrunkCert> {
    let r = t.uniformity();
    let edges = t.edges();
    let trunk = t.sub_hypergraph(|i, _| subset.contains(&i));
    // sub_hypergraph preserves lexicographic edge order, so sub-index k
    // corresponds to subset[k]
    let sub_cert = tight_order(&trunk)?;
    let trunk_vertices: BTreeSet<usize> = subset
        .iter()
        .flat_map(|&i| edges[i].iter().copied())
        .collect();

    let mut alpha = BTreeMap::new();
    let mut outside = BTreeSet::new();
    let mut rest_edges = Vec::new();
    for i in 0..edges.len() {
        if subset.contains(&i) {
            continue;
        }
        let out: Vec<usize> = edges[i]
            .iter()
            .copied()
            .filter(|v| !trunk_vertices.contains(v))
            .collect();
        // each remaining edge must bring exactly one vertex of its own
        if out.len() != 1 || !outside.insert(out[0]) {
            return None;
        }
        let host = subset
            .iter()
            .copied()
            .find(|&a| edges[i].iter().filter(|v| edges[a].contains(v)).count() == r - 1)?;
        alpha.insert(i, host);
        rest_edges.push((i, out[0], host));
    }

    // assemble a full order: trunk first (in its own certified order), then
    // the remaining edges; each of those hangs off its trunk host directly
    let mut edge_order: Vec<usize> = sub_cert.edge_order.iter().map(|&k| subset[k]).collect();
    let mut steps = sub_cert.steps.clone();
    for (i, v, host) in rest_edges {
        let host_pos = edge_order
            .iter()
            .position(|&e| e == host)
            .expect("host is a trunk edge");
        edge_order.push(i);
        steps.push(CertStep {
            new_vertex: v,
            host_pos,
        });
    }
    let full_order = TightTreeCert { edge_order, steps };
    // the ordering condition is checked explicitly, not assumed
    if full_order.validate(t).is_err() {
        return None;
    }
    let cert = TrunkCert {
        trunk_edges: subset.to_vec(),
        full_order,
        alpha,
    };
    cert.validate(t).ok()?;
    Some(cert)
}

/// True iff some edge meets every other edge in exactly `r-1` vertices.
/// Errors when `t` is not a tight tree.
pub fn is_star_shaped(t: &Hypergraph) -> Result<bool> {
    if tight_order(t).is_none() {
        return Err(Error::NotTightTree);
    }
    let r = t.uniformity();
    let edges = t.edges();
    Ok((0..edges.len()).any(|center| {
        edges.iter().enumerate().all(|(i, e)| {
            i == center || e.iter().filter(|v| edges[center].contains(v)).count() == r - 1
        })
    }))
}

/// All tight `r`-trees with `t` edges on vertex set `{0..r+t-2}`, one
/// representative per isomorphism class, built by extending smaller trees
/// with every (host edge, dropped vertex) choice and filtering duplicates.
pub fn enumerate_tight_trees(r: usize, t: usize) -> Result<Vec<Hypergraph>> {
    if r < 2 || t < 1 {
        return Err(Error::InvalidArgument(
            "enumeration needs r >= 2 and t >= 1".into(),
        ));
    }
    let n = r + t - 1;
    if n > 10 {
        return Err(Error::InvalidArgument(format!(
            "enumeration supports r + t - 1 <= 10, got {n}"
        )));
    }
    let seed = Hypergraph::new(r, n, vec![(0..r).collect::<Vec<_>>()])?;
    let mut level = vec![seed];
    for step in 1..t {
        let fresh_vertex = r + step - 1;
        let mut next: Vec<Hypergraph> = Vec::new();
        for tree in &level {
            for host in tree.edges() {
                for &drop in host {
                    let mut e: Vec<usize> = host.iter().copied().filter(|&v| v != drop).collect();
                    e.push(fresh_vertex);
                    let mut edges = tree.edges().to_vec();
                    edges.push(e);
                    let cand = Hypergraph::new(r, n, edges)?;
                    if !next.iter().any(|kept| are_isomorphic(kept, &cand)) {
                        next.push(cand);
                    }
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Isomorphism of hypergraphs on their non-isolated vertices, by vertex
/// bijection search pruned with degree multisets. Uniformity mismatch is
/// simply `false`.
pub fn are_isomorphic(g: &Hypergraph, h: &Hypergraph) -> bool {
    if g.uniformity() != h.uniformity() || g.edge_count() != h.edge_count() {
        return false;
    }
    let gv = g.non_isolated();
    let hv = h.non_isolated();
    if gv.len() != hv.len() {
        return false;
    }
    if g.edge_count() == 0 {
        return true;
    }
    let gdeg = g.vertex_degrees();
    let hdeg = h.vertex_degrees();
    let mut gm: Vec<usize> = gv.iter().map(|&v| gdeg[v]).collect();
    let mut hm: Vec<usize> = hv.iter().map(|&v| hdeg[v]).collect();
    gm.sort_unstable();
    hm.sort_unstable();
    if gm != hm {
        return false;
    }
    // map high-degree vertices first; their images are the most constrained
    let mut order = gv.clone();
    order.sort_by_key(|&v| std::cmp::Reverse(gdeg[v]));
    let mut image: BTreeMap<usize, usize> = BTreeMap::new();
    let mut taken: BTreeSet<usize> = BTreeSet::new();
    map_vertices(g, h, &gdeg, &hdeg, &hv, &order, 0, &mut image, &mut taken)
}

#[allow(clippy::too_many_arguments)]
fn map_vertices(
    g: &Hypergraph,
    h: &Hypergraph,
    gdeg: &[usize],
    hdeg: &[usize],
    hv: &[usize],
    order: &[usize],
    depth: usize,
    image: &mut BTreeMap<usize, usize>,
    taken: &mut BTreeSet<usize>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in hv {
        if taken.contains(&w) || hdeg[w] != gdeg[v] {
            continue;
        }
        image.insert(v, w);
        taken.insert(w);
        if edges_consistent(g, h, image)
            && map_vertices(g, h, gdeg, hdeg, hv, order, depth + 1, image, taken)
        {
            return true;
        }
        image.remove(&v);
        taken.remove(&w);
    }
    false
}

/// Every fully-mapped edge of `g` must land on an edge of `h`.
fn edges_consistent(g: &Hypergraph, h: &Hypergraph, image: &BTreeMap<usize, usize>) -> bool {
    for e in g.edges() {
        let mapped: Option<Vec<usize>> = e.iter().map(|v| image.get(v).copied()).collect();
        if let Some(img) = mapped {
            if !h.contains_edge(&img) {
                return false;
            }
        }
    }
    true
}
