//! The bounded-trunk embedding pipeline.
//!
//! Given a host whose edge count exceeds `((t-1)/r + a(r,c)) * |shadow|`
//! with `a(r,c) = (r^r + 1 - 1/r)(c-1)`, a tight tree with `t` edges and a
//! trunk of size `c` embeds constructively. Writing
//! `gamma = (t-1)/r + (1 - 1/r)(c-1)`, the stages are:
//!
//! 1. split edges into heavy ones (`gamma * w(e) >= 1`) and the light rest;
//! 2. take a rainbow subgraph of the light part (conditional expectations);
//! 3. keep a largest same-pattern bucket of the rainbow edges;
//! 4. peel it to minimum codegree `c`, relabel host classes so the
//!    codegrees of every surviving edge ascend, and check that the `i`-th
//!    codegree exceeds `i * gamma`;
//! 5. embed the trunk color-preservingly into the peeled subgraph;
//! 6. attach the remaining edges class by class (sizes ascending), each via
//!    a fresh co-neighbor taken in the full host.
//!
//! Every stage's state lands in an [`EmbedTrace`] so the invariants can be
//! re-audited after the fact.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{ceil_to_usize, floor_to_usize, rat_int, rat_to_json, Rat};
use crate::embed::cleaning::pattern_from_codegrees;
use crate::embed::{color_preserving_embed, extract_min_codegree, rainbow_subgraph, Embedding};
use crate::error::{Error, Result};
use crate::hypergraph::{subsets_without_one, Hypergraph};
use crate::tight::{r_partition, RPartition, TightTreeCert, TrunkCert};
use crate::weights::default_weights;

/// Full pipeline state: the constants, the edge splits, the cleaned
/// subgraphs, the class orderings, and both embeddings.
#[derive(Clone, Debug)]
pub struct EmbedTrace {
    pub gamma: Rat,
    pub a_rc: Rat,
    pub threshold: Rat,
    pub host_edges: usize,
    pub host_shadow: usize,
    pub h_count: usize,
    pub l_count: usize,
    /// Host classes after the pattern relabeling; codegrees ascend in class
    /// order for every edge of `l2_star`.
    pub partition: RPartition,
    pub l1: Hypergraph,
    pub l1_lower_bound: usize,
    pub pattern: Vec<usize>,
    pub l2: Hypergraph,
    pub l2_star: Hypergraph,
    /// Non-trunk tree edges per class, sizes ascending.
    pub extension_classes: Vec<Vec<usize>>,
    pub extension_caps: Vec<usize>,
    pub trunk_embedding: Embedding,
    pub embedding: Embedding,
}

impl EmbedTrace {
    /// Structured report: stage counts plus the exact rationals; subgraphs
    /// appear as edge counts, embeddings as vertex pairs.
    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "gamma": rat_to_json(&self.gamma),
            "a_rc": rat_to_json(&self.a_rc),
            "threshold": rat_to_json(&self.threshold),
            "host_edges": self.host_edges,
            "host_shadow": self.host_shadow,
            "h_count": self.h_count,
            "l_count": self.l_count,
            "class_sizes": self.partition.classes().iter().map(|c| c.len()).collect::<Vec<_>>(),
            "l1_count": self.l1.edge_count(),
            "l1_lower_bound": self.l1_lower_bound,
            "pattern": self.pattern,
            "l2_count": self.l2.edge_count(),
            "l2_star_count": self.l2_star.edge_count(),
            "extension_class_sizes": self.extension_classes.iter().map(|c| c.len()).collect::<Vec<_>>(),
            "extension_caps": self.extension_caps,
            "trunk_embedding": self.trunk_embedding.report(),
            "embedding": self.embedding.report(),
        })
    }

    /// Re-audits the stage invariants against the host and the tree:
    /// the constants, the rainbow lower bound, the minimum codegree of the
    /// peeled subgraph, the ascending codegree chain, the partial-sum caps,
    /// and both embeddings.
    pub fn verify(&self, g: &Hypergraph, t: &Hypergraph, trunk: &TrunkCert) -> Result<()> {
        let r = t.uniformity();
        let te = t.edge_count();
        let c = trunk.trunk_size();
        let gamma = gamma_constant(r, te, c);
        let a_rc = error_term(r, c);
        if self.gamma != gamma || self.a_rc != a_rc {
            return Err(Error::invariant("trace constants do not match the inputs"));
        }
        if self.h_count + self.l_count != g.edge_count() {
            return Err(Error::invariant(
                "heavy/light split does not cover the host",
            ));
        }
        if self.l1.edge_count() < self.l1_lower_bound {
            return Err(Error::invariant(
                "rainbow subgraph below its guaranteed size",
            ));
        }
        let needed = ceil_to_usize(
            &(rat_int(factorial(r)) * rat_int(self.l_count) / rat_int(r.pow(r as u32))),
        );
        if self.l1_lower_bound != needed {
            return Err(Error::invariant("recorded rainbow bound is wrong"));
        }
        if c > 1 && self.l2_star.min_p_degree(r - 1)? < c {
            return Err(Error::invariant(
                "peeled subgraph misses the codegree floor",
            ));
        }
        // ascending codegree chain, in the full host
        let gdeg = g.codegree_map();
        for e in self.l2_star.edges() {
            for (j, &v) in class_ordered(e, &self.partition)?.iter().enumerate() {
                let residue: Vec<usize> = e.iter().copied().filter(|&u| u != v).collect();
                let d = gdeg.get(&residue).copied().unwrap_or(0);
                if rat_int(d) <= rat_int(j + 1) * gamma.clone() {
                    return Err(Error::invariant(format!(
                        "codegree chain fails at class {} of edge {e:?}",
                        j + 1
                    )));
                }
            }
        }
        // extension classes: ascending sizes, capped partial sums
        let sizes: Vec<usize> = self.extension_classes.iter().map(|b| b.len()).collect();
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invariant("extension class sizes are not ascending"));
        }
        let mut partial = 0usize;
        for (i, &s) in sizes.iter().enumerate() {
            partial += s;
            let cap = (i + 1) * (te - c) / r;
            if self.extension_caps.get(i) != Some(&cap) || partial > cap {
                return Err(Error::invariant("partial sums exceed their caps"));
            }
        }
        let tprime = trunk.trunk_hypergraph(t);
        self.trunk_embedding.validate(&tprime, &self.l2_star)?;
        self.embedding.validate(t, g)?;
        Ok(())
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product::<usize>().max(1)
}

/// `(t-1)/r + (1 - 1/r)(c-1)`.
pub fn gamma_constant(r: usize, t: usize, c: usize) -> Rat {
    rat_int(t - 1) / rat_int(r) + (rat_int(1) - rat_int(1) / rat_int(r)) * rat_int(c - 1)
}

/// `(r^r + 1 - 1/r)(c-1)`.
pub fn error_term(r: usize, c: usize) -> Rat {
    (rat_int(r.pow(r as u32)) + rat_int(1) - rat_int(1) / rat_int(r)) * rat_int(c - 1)
}

/// The edge of `e` in each class, ordered by class index. Errors when `e`
/// is not rainbow.
fn class_ordered(e: &[usize], parts: &RPartition) -> Result<Vec<usize>> {
    let r = parts.r();
    let mut out = vec![usize::MAX; r];
    for &v in e {
        let c = parts
            .color_of(v)
            .ok_or_else(|| Error::invariant("uncolored vertex in a rainbow edge"))?;
        if out[c] != usize::MAX {
            return Err(Error::invariant("edge is not rainbow"));
        }
        out[c] = v;
    }
    Ok(out)
}

/// Embeds `t` into a host that beats the bounded-trunk density threshold,
/// following the staged construction, and returns the embedding together
/// with the audited trace.
pub fn embed_bounded_trunk(
    g: &Hypergraph,
    t: &Hypergraph,
    trunk: &TrunkCert,
) -> Result<(Embedding, EmbedTrace)> {
    let r = t.uniformity();
    if g.uniformity() != r {
        return Err(Error::UniformityMismatch(r, g.uniformity()));
    }
    trunk.validate(t)?;
    let te = t.edge_count();
    let c = trunk.trunk_size();

    let gamma = gamma_constant(r, te, c);
    let a_rc = error_term(r, c);
    let threshold = rat_int(te - 1) / rat_int(r) + a_rc.clone();
    let host_shadow = g.shadow_size();
    if rat_int(g.edge_count()) <= threshold.clone() * rat_int(host_shadow) {
        return Err(Error::BelowThreshold);
    }

    // stage (i): heavy/light split by edge weight
    let weights = default_weights(g)?;
    let heavy: Vec<bool> = g
        .edges()
        .iter()
        .map(|e| gamma.clone() * weights.edge_weights[e].clone() >= rat_int(1))
        .collect();
    let h_count = heavy.iter().filter(|&&x| x).count();
    let light = g.sub_hypergraph(|i, _| !heavy[i]);
    let l_count = light.edge_count();
    let spare = rat_int(r.pow(r as u32)) * rat_int(c - 1) * rat_int(host_shadow);
    if rat_int(l_count) <= spare {
        return Err(Error::invariant(
            "light part too small despite the density premise",
        ));
    }

    // stage (ii): rainbow subgraph of the light part
    let (parts0, l1) = rainbow_subgraph(&light);
    let l1_lower_bound =
        ceil_to_usize(&(rat_int(factorial(r)) * rat_int(l_count) / rat_int(r.pow(r as u32))));
    if l1.edge_count() < l1_lower_bound {
        return Err(Error::invariant(
            "rainbow subgraph below its guaranteed size",
        ));
    }

    // stage (iii): largest pattern bucket, codegrees in the full host
    let gdeg = g.codegree_map();
    let degree_of = |residue: &[usize]| gdeg.get(residue).copied().unwrap_or(0);
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, e) in l1.edges().iter().enumerate() {
        let p = pattern_from_codegrees(degree_of, r, e, &parts0)?;
        buckets.entry(p.sigma().to_vec()).or_default().push(i);
    }
    let (sigma, bucket) = buckets
        .iter()
        .max_by_key(|(key, b)| (b.len(), std::cmp::Reverse((*key).clone())))
        .map(|(k, b)| (k.clone(), b.clone()))
        .expect("light part is non-empty");
    let keep: BTreeSet<usize> = bucket.into_iter().collect();
    let l2 = l1.sub_hypergraph(|i, _| keep.contains(&i));
    if l2.edge_count() * factorial(r) < l1.edge_count() {
        return Err(Error::invariant("pigeonhole bucket too small"));
    }

    // stage (iv): peel to codegree c, relabel classes, verify the chain
    let l2_star = extract_min_codegree(&l2, c - 1).map_err(|e| match e {
        Error::BelowThreshold => Error::invariant("peel premise failed under the threshold"),
        other => other,
    })?;
    let mut sigma_inv = vec![0usize; r];
    for (j, &s) in sigma.iter().enumerate() {
        sigma_inv[s] = j;
    }
    let parts = parts0.relabel(&sigma_inv);
    for e in l2_star.edges() {
        for (j, &v) in class_ordered(e, &parts)?.iter().enumerate() {
            let residue: Vec<usize> = e.iter().copied().filter(|&u| u != v).collect();
            let d = degree_of(&residue);
            if rat_int(d) <= rat_int(j + 1) * gamma.clone() {
                return Err(Error::invariant(format!(
                    "codegree chain fails at class {} of edge {e:?}",
                    j + 1
                )));
            }
        }
    }

    // trunk partition and extension classes
    let tprime = trunk.trunk_hypergraph(t);
    let trunk_cert = trunk_prefix_cert(t, trunk, &tprime)?;
    let phi = r_partition(&tprime, &trunk_cert)?;
    let mut class_buckets: Vec<Vec<usize>> = vec![Vec::new(); r];
    for &i in &trunk.full_order.edge_order[c..] {
        let a = trunk.alpha[&i];
        let dropped = t.edges()[a]
            .iter()
            .copied()
            .find(|v| !t.edges()[i].contains(v))
            .expect("trunk host meets the edge in r-1 vertices");
        let k = phi
            .color_of(dropped)
            .ok_or_else(|| Error::invariant("trunk vertex missing a color"))?;
        class_buckets[k].push(i);
    }
    // stage (vi): order classes so the sizes ascend
    let mut class_order: Vec<usize> = (0..r).collect();
    class_order.sort_by_key(|&k| (class_buckets[k].len(), k));
    let extension_classes: Vec<Vec<usize>> = class_order
        .iter()
        .map(|&k| class_buckets[k].clone())
        .collect();
    let mut order_inv = vec![0usize; r];
    for (j, &k) in class_order.iter().enumerate() {
        order_inv[k] = j;
    }
    let phi_rel = phi.relabel(&order_inv);
    let mut extension_caps = Vec::with_capacity(r);
    let mut partial = 0usize;
    for (i, bucket) in extension_classes.iter().enumerate() {
        partial += bucket.len();
        let cap = (i + 1) * (te - c) / r;
        if partial > cap {
            return Err(Error::invariant("partial sums exceed their caps"));
        }
        extension_caps.push(cap);
    }

    // stage (vii): trunk goes into the peeled subgraph, colors matched
    let trunk_embedding = color_preserving_embed(&tprime, &trunk_cert, &phi_rel, &l2_star, &parts)?;

    let mut trace = EmbedTrace {
        gamma: gamma.clone(),
        a_rc,
        threshold,
        host_edges: g.edge_count(),
        host_shadow,
        h_count,
        l_count,
        partition: parts,
        l1,
        l1_lower_bound,
        pattern: sigma,
        l2,
        l2_star,
        extension_classes,
        extension_caps,
        trunk_embedding: trunk_embedding.clone(),
        embedding: trunk_embedding.clone(),
    };

    // stage (viii): greedy extension through the classes, ascending
    let mut conbrs: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in g.edges() {
        for (skip, d) in subsets_without_one(e).into_iter().enumerate() {
            conbrs.entry(d).or_default().push(e[skip]);
        }
    }
    for z in conbrs.values_mut() {
        z.sort_unstable();
    }
    let mut map = trunk_embedding.vertex_map().clone();
    let mut used: BTreeSet<usize> = map.values().copied().collect();
    for (j, bucket) in trace.extension_classes.clone().iter().enumerate() {
        let need = floor_to_usize(&(rat_int(j + 1) * gamma.clone())) + 1;
        for &i in bucket {
            let e = &t.edges()[i];
            let host = &t.edges()[trunk.alpha[&i]];
            let shared: Vec<usize> = e.iter().copied().filter(|v| host.contains(v)).collect();
            let fresh = e
                .iter()
                .copied()
                .find(|v| !host.contains(v))
                .expect("non-trunk edge has one vertex of its own");
            let mut img: Vec<usize> = shared.iter().map(|v| map[v]).collect();
            img.sort_unstable();
            let d = degree_of(&img);
            if d < need {
                return Err(Error::InvariantViolation {
                    msg: format!("extension codegree {d} below the floor {need}"),
                    trace: Some(Box::new(trace)),
                });
            }
            let z = conbrs
                .get(&img)
                .and_then(|zs| zs.iter().copied().find(|z| !used.contains(z)));
            let Some(z) = z else {
                return Err(Error::InvariantViolation {
                    msg: "no fresh co-neighbor for an extension edge".into(),
                    trace: Some(Box::new(trace)),
                });
            };
            map.insert(fresh, z);
            used.insert(z);
        }
    }

    let embedding = Embedding::new(map);
    embedding.validate(t, g)?;
    trace.embedding = embedding.clone();
    trace.verify(g, t, trunk)?;
    Ok((embedding, trace))
}

/// The trunk's own certificate: the head of the full order, re-indexed to
/// the trunk sub-hypergraph.
fn trunk_prefix_cert(
    t: &Hypergraph,
    trunk: &TrunkCert,
    tprime: &Hypergraph,
) -> Result<TightTreeCert> {
    let c = trunk.trunk_size();
    let reindex = |t_idx: usize| -> Result<usize> {
        let edge = &t.edges()[t_idx];
        tprime
            .edges()
            .binary_search(edge)
            .map_err(|_| Error::invariant("trunk edge missing from the trunk subgraph"))
    };
    let edge_order: Vec<usize> = trunk.full_order.edge_order[..c]
        .iter()
        .map(|&i| reindex(i))
        .collect::<Result<_>>()?;
    let cert = TightTreeCert {
        edge_order,
        steps: trunk.full_order.steps[..c.saturating_sub(1)].to_vec(),
    };
    cert.validate(tprime)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tight::trunk_number;

    #[test]
    fn constants() {
        assert_eq!(gamma_constant(3, 5, 2), rat_int(2));
        assert_eq!(error_term(3, 2), rat_int(83) / rat_int(3));
        assert_eq!(error_term(3, 1), rat_int(0));
        assert_eq!(gamma_constant(3, 3, 1), rat_int(2) / rat_int(3));
    }

    #[test]
    fn star_into_smallest_dense_complete_host() {
        // three-edge star with trunk one; K_5^3 has 10 > (2/3) * 10 edges
        let t = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).unwrap();
        let (c, trunk) = trunk_number(&t).unwrap();
        assert_eq!(c, 1);
        let g = Hypergraph::complete(5, 3).unwrap();
        let (emb, trace) = embed_bounded_trunk(&g, &t, &trunk).unwrap();
        emb.validate(&t, &g).unwrap();
        trace.verify(&g, &t, &trunk).unwrap();
        assert_eq!(trace.h_count, 0);
        assert_eq!(trace.l_count, 10);
    }

    #[test]
    fn below_threshold_is_rejected() {
        let t = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).unwrap();
        let (_, trunk) = trunk_number(&t).unwrap();
        // K_4^3: 4 edges, shadow 6, and 4 <= (2/3) * 6
        let g = Hypergraph::complete(4, 3).unwrap();
        assert!(matches!(
            embed_bounded_trunk(&g, &t, &trunk),
            Err(Error::BelowThreshold)
        ));
    }

    #[test]
    fn single_edge_tree_runs_the_degenerate_pipeline() {
        let t = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let (c, trunk) = trunk_number(&t).unwrap();
        assert_eq!(c, 1);
        let g = Hypergraph::complete(4, 3).unwrap();
        let (emb, trace) = embed_bounded_trunk(&g, &t, &trunk).unwrap();
        emb.validate(&t, &g).unwrap();
        assert_eq!(trace.gamma, rat_int(0));
        assert!(trace.extension_classes.iter().all(|b| b.is_empty()));
    }

    #[test]
    fn trunk_two_tree_into_a_dense_host() {
        // tight path with one extra edge on a trunk pair: t = 5, c = 2
        let t = Hypergraph::new(
            3,
            7,
            vec![
                vec![0, 1, 2],
                vec![1, 2, 3],
                vec![2, 3, 4],
                vec![3, 4, 5],
                vec![1, 2, 6],
            ],
        )
        .unwrap();
        let (c, trunk) = trunk_number(&t).unwrap();
        assert_eq!(c, 2);
        // threshold (4/3 + 83/3) = 29; K_21^3 has 1330 > 29 * 210 = 6090? no.
        // smallest complete host above threshold: C(n,3) > 29 C(n,2), i.e.
        // n > 89; use n = 90 here to keep the unit test quick-ish.
        let g = Hypergraph::complete(90, 3).unwrap();
        let (emb, trace) = embed_bounded_trunk(&g, &t, &trunk).unwrap();
        emb.validate(&t, &g).unwrap();
        trace.verify(&g, &t, &trunk).unwrap();
        assert_eq!(trace.gamma, rat_int(2));
    }
}
