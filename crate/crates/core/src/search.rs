//! Exact desk-scale searches: maximum pattern-free edge counts and maximum
//! edge/shadow ratios, plus the bound verifiers built on them.
//!
//! The engine branches over the candidate edges of the complete host in
//! colexicographic order, include-first. Containment never reruns from
//! scratch: all copies of the pattern are precomputed as sets of edge
//! slots, and including a slot decrements a per-copy missing counter; a
//! copy down to one missing slot kills that slot for the rest of the
//! branch. The optimistic bound is the number of still-addable slots.
//! Traversal order, witnesses, and node counts are all deterministic.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{binomial, rat_int, Rat};
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::hypergraph::{k_subsets, subsets_without_one, Hypergraph};

/// Search knobs. `budget` caps explored nodes; `orbit_pruning` enables the
/// root-level symmetry shortcut (identical results, fewer nodes on dense
/// instances, at the price of a second pass to recover the canonical
/// witness).
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub orbit_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: u64::MAX,
            orbit_pruning: false,
        }
    }
}

/// Outcome of a maximum-edge search. When `exhaustive` is false the budget
/// ran out and `max_edges` is only a certified lower bound.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub max_edges: usize,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// Outcome of a maximum edge/shadow ratio search.
#[derive(Clone, Debug)]
pub struct RatioResult {
    pub best_ratio: Rat,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// All copies of `t` inside the complete `r`-graph on `n` vertices, as
/// sorted lists of slot indices (slots in colexicographic order).
struct CopyTable {
    slots: Vec<Vec<usize>>,
    copies: Vec<Vec<u32>>,
    by_slot: Vec<Vec<u32>>,
}

fn copy_table(n: usize, t: &Hypergraph) -> CopyTable {
    let r = t.uniformity();
    let mut slots = k_subsets(n, r);
    slots.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    let index: BTreeMap<Vec<usize>, u32> = slots
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as u32))
        .collect();

    let tv = t.non_isolated();
    let mut copies: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut image = vec![usize::MAX; t.vertex_count()];
    let mut used = vec![false; n];
    place(t, &tv, 0, &mut image, &mut used, &index, &mut copies);
    let copies: Vec<Vec<u32>> = copies.into_iter().collect();
    let mut by_slot = vec![Vec::new(); slots.len()];
    for (ci, c) in copies.iter().enumerate() {
        for &s in c {
            by_slot[s as usize].push(ci as u32);
        }
    }
    CopyTable {
        slots,
        copies,
        by_slot,
    }
}

fn place(
    t: &Hypergraph,
    tv: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    index: &BTreeMap<Vec<usize>, u32>,
    out: &mut BTreeSet<Vec<u32>>,
) {
    if depth == tv.len() {
        let mut copy: Vec<u32> = t
            .edges()
            .iter()
            .map(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| image[v]).collect();
                img.sort_unstable();
                index[&img]
            })
            .collect();
        copy.sort_unstable();
        copy.dedup();
        out.insert(copy);
        return;
    }
    let v = tv[depth];
    for w in 0..used.len() {
        if used[w] {
            continue;
        }
        image[v] = w;
        used[w] = true;
        // prune: edges fully placed so far must exist as slots (they always
        // do in a complete host, so only injectivity matters here)
        place(t, tv, depth + 1, image, used, index, out);
        used[w] = false;
        image[v] = usize::MAX;
    }
}

/// Shared branch-and-bound state over the slot list.
struct Engine<'a> {
    table: &'a CopyTable,
    missing: Vec<u32>,
    in_set: Vec<bool>,
    alive: Vec<bool>,
    alive_count: usize,
    count: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl<'a> Engine<'a> {
    fn new(table: &'a CopyTable, budget: u64) -> Self {
        let m = table.slots.len();
        let mut eng = Engine {
            table,
            missing: table.copies.iter().map(|c| c.len() as u32).collect(),
            in_set: vec![false; m],
            alive: vec![true; m],
            alive_count: m,
            count: 0,
            nodes: 0,
            budget,
            aborted: false,
        };
        // single-slot copies kill their slot outright
        for c in &table.copies {
            if c.len() == 1 {
                let s = c[0] as usize;
                if eng.alive[s] {
                    eng.alive[s] = false;
                    eng.alive_count -= 1;
                }
            }
        }
        eng
    }

    fn include(&mut self, slot: usize) -> Vec<u32> {
        self.in_set[slot] = true;
        self.count += 1;
        let mut killed = Vec::new();
        for k in 0..self.table.by_slot[slot].len() {
            let ci = self.table.by_slot[slot][k] as usize;
            self.missing[ci] -= 1;
            if self.missing[ci] == 1 {
                let open = self.table.copies[ci]
                    .iter()
                    .copied()
                    .find(|&s| !self.in_set[s as usize])
                    .expect("one slot is still missing");
                if self.alive[open as usize] {
                    self.alive[open as usize] = false;
                    self.alive_count -= 1;
                    killed.push(open);
                }
            }
        }
        killed
    }

    fn undo_include(&mut self, slot: usize, killed: Vec<u32>) {
        for &s in killed.iter().rev() {
            self.alive[s as usize] = true;
            self.alive_count += 1;
        }
        for k in 0..self.table.by_slot[slot].len() {
            let ci = self.table.by_slot[slot][k] as usize;
            self.missing[ci] += 1;
        }
        self.in_set[slot] = false;
        self.count -= 1;
    }

    fn enter(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget {
            self.aborted = true;
        }
        !self.aborted
    }
}

/// Maximum-edge search state.
struct MaxSearch<'a> {
    eng: Engine<'a>,
    best: usize,
    best_set: Vec<bool>,
    stop_at: Option<usize>,
    stopped: bool,
    force_root: bool,
}

impl<'a> MaxSearch<'a> {
    fn dfs(&mut self, idx: usize) {
        if self.stopped || self.eng.aborted || !self.eng.enter() {
            return;
        }
        if self.eng.count + self.eng.alive_count <= self.best {
            return;
        }
        let m = self.eng.table.slots.len();
        if idx == m {
            return;
        }
        if self.eng.alive[idx] {
            self.eng.alive[idx] = false;
            self.eng.alive_count -= 1;
            let killed = self.eng.include(idx);
            if self.eng.count > self.best {
                self.best = self.eng.count;
                self.best_set = self.eng.in_set.clone();
                if self.stop_at == Some(self.best) {
                    self.stopped = true;
                }
            }
            if !self.stopped {
                self.dfs(idx + 1);
            }
            self.eng.undo_include(idx, killed);
            if self.stopped || self.eng.aborted || (self.force_root && idx == 0) {
                self.eng.alive[idx] = true;
                self.eng.alive_count += 1;
                return;
            }
            // exclude branch: the slot stays dead for the subtree
            self.dfs(idx + 1);
            self.eng.alive[idx] = true;
            self.eng.alive_count += 1;
        } else {
            self.dfs(idx + 1);
        }
    }
}

/// The largest number of edges of a `t`-free `r`-graph on `n` vertices,
/// with a witness. Exhaustive when the node budget suffices; otherwise the
/// incumbent is returned as a certified lower bound.
pub fn turan_exact(n: usize, t: &Hypergraph, opts: &SearchOptions) -> Result<SearchResult> {
    let table = prepare(n, t)?;
    let mut nodes = 0u64;
    let (best, best_set, exhaustive) = if opts.orbit_pruning {
        // pass 1: the complete host is edge-transitive, so some maximum
        // witness contains slot 0; forcing it halves the root
        let mut pass1 = MaxSearch {
            eng: Engine::new(&table, opts.budget),
            best: 0,
            best_set: vec![false; table.slots.len()],
            stop_at: None,
            stopped: false,
            force_root: true,
        };
        pass1.dfs(0);
        nodes += pass1.eng.nodes;
        let max = pass1.best;
        let exhaustive1 = !pass1.eng.aborted;
        if max == 0 || !exhaustive1 {
            (max, pass1.best_set, exhaustive1)
        } else {
            // pass 2: recover the canonical witness, i.e. the first set
            // of the plain traversal attaining the maximum
            let mut pass2 = MaxSearch {
                eng: Engine::new(&table, opts.budget.saturating_sub(nodes)),
                best: max - 1,
                best_set: vec![false; table.slots.len()],
                stop_at: Some(max),
                stopped: false,
                force_root: false,
            };
            pass2.dfs(0);
            nodes += pass2.eng.nodes;
            if !pass2.stopped {
                return Err(Error::invariant(
                    "witness pass failed to re-attain the maximum",
                ));
            }
            (max, pass2.best_set, true)
        }
    } else {
        let mut search = MaxSearch {
            eng: Engine::new(&table, opts.budget),
            best: 0,
            best_set: vec![false; table.slots.len()],
            stop_at: None,
            stopped: false,
            force_root: false,
        };
        search.dfs(0);
        nodes += search.eng.nodes;
        (search.best, search.best_set, !search.eng.aborted)
    };
    let witness = witness_graph(n, t.uniformity(), &table, &best_set)?;
    debug_assert!(find_embedding(t, &witness)?.is_none());
    Ok(SearchResult {
        max_edges: best,
        witness,
        nodes_explored: nodes,
        exhaustive,
    })
}

fn prepare(n: usize, t: &Hypergraph) -> Result<CopyTable> {
    if t.edge_count() == 0 {
        return Err(Error::InvalidArgument(
            "the forbidden pattern needs at least one edge".into(),
        ));
    }
    Ok(copy_table(n, t))
}

fn witness_graph(n: usize, r: usize, table: &CopyTable, set: &[bool]) -> Result<Hypergraph> {
    Hypergraph::new(
        r,
        n,
        table
            .slots
            .iter()
            .zip(set)
            .filter(|(_, &keep)| keep)
            .map(|(e, _)| e.clone()),
    )
}

/// Ratio search state: tracks the shadow of the current set so the bound
/// `(count + alive) / shadow` and the objective stay exact.
struct RatioSearch<'a> {
    eng: Engine<'a>,
    subset_ids: Vec<Vec<u32>>,
    subset_count: Vec<u32>,
    shadow: usize,
    best: Option<(u64, u64)>, // ratio as num/den
    best_set: Vec<bool>,
    best_edges: Vec<Vec<usize>>,
    r: usize,
}

impl<'a> RatioSearch<'a> {
    fn dfs(&mut self, idx: usize) {
        if self.eng.aborted || !self.eng.enter() {
            return;
        }
        let optimistic = self.eng.count + self.eng.alive_count;
        if optimistic == 0 {
            return;
        }
        if let Some((bn, bd)) = self.best {
            let denom = if self.shadow > 0 { self.shadow } else { self.r };
            // prune only strictly-worse branches; ties may still improve
            // the lexicographic witness
            if (optimistic as u128) * (bd as u128) < (bn as u128) * (denom as u128) {
                return;
            }
        }
        let m = self.eng.table.slots.len();
        if idx == m {
            return;
        }
        if self.eng.alive[idx] {
            self.eng.alive[idx] = false;
            self.eng.alive_count -= 1;
            let killed = self.eng.include(idx);
            let shadow_added = self.add_shadow(idx);
            self.consider();
            self.dfs(idx + 1);
            self.remove_shadow(idx, shadow_added);
            self.eng.undo_include(idx, killed);
            if self.eng.aborted {
                self.eng.alive[idx] = true;
                self.eng.alive_count += 1;
                return;
            }
            self.dfs(idx + 1);
            self.eng.alive[idx] = true;
            self.eng.alive_count += 1;
        } else {
            self.dfs(idx + 1);
        }
    }

    fn add_shadow(&mut self, slot: usize) -> u32 {
        let mut added = 0;
        for k in 0..self.subset_ids[slot].len() {
            let s = self.subset_ids[slot][k] as usize;
            if self.subset_count[s] == 0 {
                added += 1;
                self.shadow += 1;
            }
            self.subset_count[s] += 1;
        }
        added
    }

    fn remove_shadow(&mut self, slot: usize, _added: u32) {
        for k in 0..self.subset_ids[slot].len() {
            let s = self.subset_ids[slot][k] as usize;
            self.subset_count[s] -= 1;
            if self.subset_count[s] == 0 {
                self.shadow -= 1;
            }
        }
    }

    fn consider(&mut self) {
        let num = self.eng.count as u64;
        let den = self.shadow as u64;
        debug_assert!(den > 0);
        let better = match self.best {
            None => true,
            Some((bn, bd)) => {
                let lhs = (num as u128) * (bd as u128);
                let rhs = (bn as u128) * (den as u128);
                lhs > rhs || (lhs == rhs && self.lex_smaller())
            }
        };
        if better {
            self.best = Some((num, den));
            self.best_set = self.eng.in_set.clone();
            self.best_edges = self.current_edges();
        }
    }

    fn current_edges(&self) -> Vec<Vec<usize>> {
        let mut edges: Vec<Vec<usize>> = self
            .eng
            .table
            .slots
            .iter()
            .zip(&self.eng.in_set)
            .filter(|(_, &x)| x)
            .map(|(e, _)| e.clone())
            .collect();
        edges.sort();
        edges
    }

    fn lex_smaller(&self) -> bool {
        self.current_edges() < self.best_edges
    }
}

/// The maximum of `e(G)/|shadow(G)|` over non-empty `t`-free `r`-graphs on
/// `n` vertices. Ties between witnesses go to the lexicographically
/// smallest edge set.
pub fn beta_exact(n: usize, t: &Hypergraph, opts: &SearchOptions) -> Result<RatioResult> {
    let table = prepare(n, t)?;
    let r = t.uniformity();
    // intern the (r-1)-subsets of every slot
    let mut subset_index: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    let mut subset_ids: Vec<Vec<u32>> = Vec::with_capacity(table.slots.len());
    for e in &table.slots {
        let ids = subsets_without_one(e)
            .into_iter()
            .map(|d| {
                let next = subset_index.len() as u32;
                *subset_index.entry(d).or_insert(next)
            })
            .collect();
        subset_ids.push(ids);
    }
    let mut search = RatioSearch {
        eng: Engine::new(&table, opts.budget),
        subset_count: vec![0; subset_index.len()],
        subset_ids,
        shadow: 0,
        best: None,
        best_set: vec![false; table.slots.len()],
        best_edges: Vec::new(),
        r,
    };
    search.dfs(0);
    let Some((num, den)) = search.best else {
        return Err(Error::InvalidArgument(
            "every non-empty graph on this vertex count contains the pattern".into(),
        ));
    };
    let witness = witness_graph(n, r, &table, &search.best_set)?;
    debug_assert!(find_embedding(t, &witness)?.is_none());
    Ok(RatioResult {
        best_ratio: rat_int(num as usize) / rat_int(den as usize),
        witness,
        nodes_explored: search.eng.nodes,
        exhaustive: !search.eng.aborted,
    })
}

/// Comparison of an exact search against the `(t-1)/r * C(n, r-1)` bound.
#[derive(Clone, Debug)]
pub struct KalaiReport {
    pub n: usize,
    pub r: usize,
    pub tree_edges: usize,
    pub search: SearchResult,
    pub bound: Rat,
    pub pass: bool,
    pub slack: Rat,
}

pub fn verify_kalai(n: usize, t: &Hypergraph, opts: &SearchOptions) -> Result<KalaiReport> {
    let r = t.uniformity();
    let tree_edges = t.edge_count();
    let search = turan_exact(n, t, opts)?;
    let bound = rat_int(tree_edges - 1) / rat_int(r) * Rat::from_integer(binomial(n, r - 1));
    let pass = rat_int(search.max_edges) <= bound;
    let slack = bound.clone() - rat_int(search.max_edges);
    Ok(KalaiReport {
        n,
        r,
        tree_edges,
        search,
        bound,
        pass,
        slack,
    })
}

/// Freeness plus an `e(G) <= coeff * |shadow(G)|` check. When `g` contains
/// the pattern the inequality is not tested and the report says so.
#[derive(Clone, Debug)]
pub struct ShadowBoundReport {
    pub t_free: bool,
    pub edge_count: usize,
    pub shadow_size: usize,
    pub coefficient: Rat,
    pub bound_holds: Option<bool>,
    pub pass: bool,
}

pub fn verify_shadow_bound(
    g: &Hypergraph,
    t: &Hypergraph,
    coefficient: &Rat,
) -> Result<ShadowBoundReport> {
    let t_free = find_embedding(t, g)?.is_none();
    let edge_count = g.edge_count();
    let shadow_size = g.shadow_size();
    let bound_holds =
        t_free.then(|| rat_int(edge_count) <= coefficient.clone() * rat_int(shadow_size));
    Ok(ShadowBoundReport {
        t_free,
        edge_count,
        shadow_size,
        coefficient: coefficient.clone(),
        bound_holds,
        pass: bound_holds == Some(true),
    })
}
