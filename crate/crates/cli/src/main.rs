//! Batch command-line front end. Every subcommand reads canonical text
//! inputs, runs one library operation, and prints a deterministic report:
//! human-readable lines by default, a JSON document with `--json`. Wall
//! time goes to stderr so identical inputs always produce byte-identical
//! stdout.
//!
//! Exit codes: 0 success/pass, 1 verified-fail (a bound was violated or a
//! pattern is not contained), 2 usage or precondition error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tighttree::arith::{parse_rat, rat_to_json, Rat};
use tighttree::construct::{
    complete_hypergraph, disjoint_cliques, ekr_family, grid_rows_and_columns,
    shadow_disjoint_packing, shadow_disjoint_packing_with_candidates, tournament_family,
    Tournament,
};
use tighttree::embed::{embed_bounded_trunk, embed_small_tree, find_embedding};
use tighttree::error::Error;
use tighttree::hypergraph::Hypergraph;
use tighttree::random::random_hypergraph_seeded;
use tighttree::search::{
    beta_exact, turan_exact, verify_kalai, verify_shadow_bound, SearchOptions,
};
use tighttree::tight::{enumerate_tight_trees, r_partition, tight_order, trunk_number};
use tighttree::weights::default_weights;

#[derive(Parser)]
#[command(
    name = "tighttree",
    version,
    about = "Exact tight-tree and hypergraph toolkit"
)]
struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for batch fan-out. Outputs are identical for every
    /// value; the search cores are deterministic and sequential.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    /// Host vertex count.
    #[arg(long)]
    n: usize,
    /// Forbidden tree (canonical text format).
    #[arg(long)]
    tree: PathBuf,
    /// Node budget; the incumbent is returned when it runs out.
    #[arg(long)]
    budget: Option<u64>,
    /// Root-level symmetry shortcut; same results, different node counts.
    #[arg(long)]
    orbit_pruning: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Shadow of a hypergraph.
    Shadow {
        #[arg(long)]
        input: PathBuf,
    },
    /// Default weight function and the total-weight identity.
    Weights {
        #[arg(long)]
        input: PathBuf,
    },
    /// Recognize a tight tree and print its placement certificate.
    IsTightTree {
        #[arg(long)]
        input: PathBuf,
    },
    /// The unique proper r-coloring of a tight tree.
    Partition {
        #[arg(long)]
        input: PathBuf,
    },
    /// Trunk number with a minimum trunk witness.
    Trunk {
        #[arg(long)]
        input: PathBuf,
    },
    /// All tight r-trees with t edges, one per isomorphism class.
    EnumerateTrees {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// Exhaustive containment oracle.
    Embed {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Bounded-trunk pipeline; prints the stage trace.
    EmbedTrunk {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Small-tree embedding (at most four edges).
    EmbedSmall {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact maximum edge count of a tree-free host.
    Turan {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact maximum edge/shadow ratio of a tree-free host.
    Beta {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compare the exact maximum against (t-1)/r * C(n, r-1).
    VerifyKalai {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check freeness and e(G) <= coeff * |shadow(G)|.
    VerifyShadow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        /// Coefficient as `a/b` or an integer.
        #[arg(long)]
        coeff: String,
    },
    /// Generators for the extremal families.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Randomized identity checks (the only seeded subcommand).
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Complete r-graph on n vertices.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// All r-sets through vertex 0.
    Ekr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Triple-block family driven by a tournament on n/3 vertices.
    Tournament {
        #[arg(long)]
        n: usize,
        /// Arc-list file; the first line is the vertex count.
        #[arg(long, conflicts_with = "cyclic")]
        tournament: Option<PathBuf>,
        /// Use the rotational tournament instead of a file (odd n/3).
        #[arg(long)]
        cyclic: bool,
    },
    /// Disjoint union of complete graphs on t vertices (uniformity 2).
    Cliques {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Greedy shadow-disjoint packing of a template onto n vertices.
    Packing {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        /// Use the rows and columns of a side x side grid as candidates.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// Report payload plus the exit status and a human rendering.
struct Outcome {
    report: Value,
    text: String,
    exit: u8,
}

fn ok(report: Value, text: String) -> Outcome {
    Outcome {
        report,
        text,
        exit: 0,
    }
}

fn fail(report: Value, text: String) -> Outcome {
    Outcome {
        report,
        text,
        exit: 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    let started = Instant::now();
    let outcome = run(&cli.command);
    let code = match outcome {
        Ok(out) => {
            let payload = if cli.json {
                let mut s = serde_json::to_string_pretty(&out.report).expect("valid json");
                s.push('\n');
                s
            } else {
                out.text
            };
            if !emit(&payload) {
                // downstream closed the pipe; stop quietly
                return ExitCode::from(0);
            }
            out.exit
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    };
    eprintln!("elapsed: {:.3?}", started.elapsed());
    ExitCode::from(code)
}

/// Writes to stdout, treating a broken pipe as a normal early exit.
fn emit(payload: &str) -> bool {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(payload.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => true,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => false,
        Err(e) => {
            eprintln!("error: cannot write to stdout: {e}");
            std::process::exit(2);
        }
    }
}

fn load(path: &Path) -> Result<Hypergraph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
}

fn search_options(args: &SearchArgs) -> SearchOptions {
    SearchOptions {
        budget: args.budget.unwrap_or(u64::MAX),
        orbit_pruning: args.orbit_pruning,
    }
}

fn graph_stats(g: &Hypergraph) -> Value {
    json!({
        "r": g.uniformity(),
        "n": g.vertex_count(),
        "edges": g.edge_count(),
        "shadow": g.shadow_size(),
    })
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Shadow { input } => {
            let g = load(input)?;
            let shadow = g.shadow();
            let mut text = String::new();
            writeln!(text, "shadow size: {}", shadow.len()).unwrap();
            for d in &shadow {
                let row: Vec<String> = d.iter().map(|v| v.to_string()).collect();
                writeln!(text, "{}", row.join(" ")).unwrap();
            }
            Ok(ok(
                json!({
                    "command": "shadow",
                    "input": graph_stats(&g),
                    "shadow": shadow,
                }),
                text,
            ))
        }
        Command::Weights { input } => {
            let g = load(input)?;
            let w = default_weights(&g)?;
            let total = w.total_edge_weight();
            let pass = w.identity_holds(&g);
            let text = format!(
                "total edge weight: {total}\nshadow size: {}\nidentity: {}\n",
                g.shadow_size(),
                if pass { "pass" } else { "FAIL" }
            );
            let report = json!({
                "command": "weights",
                "input": graph_stats(&g),
                "total": rat_to_json(&total),
                "identity": pass,
            });
            Ok(if pass {
                ok(report, text)
            } else {
                fail(report, text)
            })
        }
        Command::IsTightTree { input } => {
            let g = load(input)?;
            match tight_order(&g) {
                Some(cert) => Ok(ok(
                    json!({
                        "command": "is-tight-tree",
                        "input": graph_stats(&g),
                        "tight": true,
                        "certificate": cert.report(&g),
                    }),
                    "tight tree: yes\n".into(),
                )),
                None => Ok(fail(
                    json!({
                        "command": "is-tight-tree",
                        "input": graph_stats(&g),
                        "tight": false,
                    }),
                    "tight tree: no\n".into(),
                )),
            }
        }
        Command::Partition { input } => {
            let g = load(input)?;
            let Some(cert) = tight_order(&g) else {
                return Ok(fail(
                    json!({"command": "partition", "tight": false}),
                    "tight tree: no\n".into(),
                ));
            };
            let phi = r_partition(&g, &cert)?;
            let classes = phi.classes();
            let mut text = String::new();
            for (i, class) in classes.iter().enumerate() {
                let row: Vec<String> = class.iter().map(|v| v.to_string()).collect();
                writeln!(text, "class {}: {}", i, row.join(" ")).unwrap();
            }
            Ok(ok(
                json!({
                    "command": "partition",
                    "input": graph_stats(&g),
                    "classes": classes,
                }),
                text,
            ))
        }
        Command::Trunk { input } => {
            let g = load(input)?;
            let (c, cert) = trunk_number(&g)?;
            let trunk_edges: Vec<&Vec<usize>> =
                cert.trunk_edges.iter().map(|&i| &g.edges()[i]).collect();
            let text = format!("trunk number: {c}\ntrunk edges: {trunk_edges:?}\n");
            Ok(ok(
                json!({
                    "command": "trunk",
                    "input": graph_stats(&g),
                    "trunk_number": c,
                    "trunk_edges": trunk_edges,
                    "order": cert.full_order.report(&g),
                }),
                text,
            ))
        }
        Command::EnumerateTrees { r, t } => {
            let trees = enumerate_tight_trees(*r, *t)?;
            let texts: Vec<String> = trees.iter().map(|g| g.to_text()).collect();
            let mut text = format!("classes: {}\n", trees.len());
            for g in &texts {
                text.push_str(g);
                text.push('\n');
            }
            Ok(ok(
                json!({
                    "command": "enumerate-trees",
                    "r": r,
                    "t": t,
                    "count": trees.len(),
                    "trees": texts,
                }),
                text,
            ))
        }
        Command::Embed { tree, input } => {
            let t = load(tree)?;
            let g = load(input)?;
            match find_embedding(&t, &g)? {
                Some(emb) => Ok(ok(
                    json!({
                        "command": "embed",
                        "contained": true,
                        "embedding": emb.report(),
                    }),
                    format!("contained: yes\nembedding: {:?}\n", emb.vertex_map()),
                )),
                None => Ok(fail(
                    json!({"command": "embed", "contained": false}),
                    "contained: no\n".into(),
                )),
            }
        }
        Command::EmbedTrunk { tree, input } => {
            let t = load(tree)?;
            let g = load(input)?;
            let (_, trunk) = trunk_number(&t)?;
            let (emb, trace) = embed_bounded_trunk(&g, &t, &trunk)?;
            Ok(ok(
                json!({
                    "command": "embed-trunk",
                    "host": graph_stats(&g),
                    "tree": graph_stats(&t),
                    "trunk_size": trunk.trunk_size(),
                    "trace": trace.report(),
                }),
                format!(
                    "embedded: yes\ntrunk size: {}\nembedding: {:?}\n",
                    trunk.trunk_size(),
                    emb.vertex_map()
                ),
            ))
        }
        Command::EmbedSmall { tree, input } => {
            let t = load(tree)?;
            let g = load(input)?;
            let emb = embed_small_tree(&g, &t)?;
            Ok(ok(
                json!({
                    "command": "embed-small",
                    "host": graph_stats(&g),
                    "tree": graph_stats(&t),
                    "embedding": emb.report(),
                }),
                format!("embedded: yes\nembedding: {:?}\n", emb.vertex_map()),
            ))
        }
        Command::Turan { search } => {
            let t = load(&search.tree)?;
            let res = turan_exact(search.n, &t, &search_options(search))?;
            Ok(ok(
                json!({
                    "command": "turan",
                    "n": search.n,
                    "tree": t.to_text(),
                    "max_edges": res.max_edges,
                    "witness": res.witness.to_text(),
                    "nodes": res.nodes_explored,
                    "exhaustive": res.exhaustive,
                }),
                format!(
                    "max edges: {}\nexhaustive: {}\nnodes: {}\n",
                    res.max_edges, res.exhaustive, res.nodes_explored
                ),
            ))
        }
        Command::Beta { search } => {
            let t = load(&search.tree)?;
            let res = beta_exact(search.n, &t, &search_options(search))?;
            Ok(ok(
                json!({
                    "command": "beta",
                    "n": search.n,
                    "tree": t.to_text(),
                    "best_ratio": rat_to_json(&res.best_ratio),
                    "witness": res.witness.to_text(),
                    "nodes": res.nodes_explored,
                    "exhaustive": res.exhaustive,
                }),
                format!(
                    "best ratio: {}\nexhaustive: {}\nnodes: {}\n",
                    res.best_ratio, res.exhaustive, res.nodes_explored
                ),
            ))
        }
        Command::VerifyKalai { search } => {
            let t = load(&search.tree)?;
            let rep = verify_kalai(search.n, &t, &search_options(search))?;
            let report = json!({
                "command": "verify-kalai",
                "n": rep.n,
                "r": rep.r,
                "tree_edges": rep.tree_edges,
                "max_edges": rep.search.max_edges,
                "exhaustive": rep.search.exhaustive,
                "nodes": rep.search.nodes_explored,
                "bound": rat_to_json(&rep.bound),
                "slack": rat_to_json(&rep.slack),
                "pass": rep.pass,
                "witness": rep.search.witness.to_text(),
            });
            let text = format!(
                "max edges: {}\nbound: {}\nverdict: {}\n",
                rep.search.max_edges,
                rep.bound,
                if rep.pass { "pass" } else { "FAIL" }
            );
            Ok(if rep.pass {
                ok(report, text)
            } else {
                fail(report, text)
            })
        }
        Command::VerifyShadow { input, tree, coeff } => {
            let g = load(input)?;
            let t = load(tree)?;
            let coefficient: Rat = parse_rat(coeff)
                .ok_or_else(|| Error::InvalidArgument(format!("bad coefficient {coeff:?}")))?;
            let rep = verify_shadow_bound(&g, &t, &coefficient)?;
            let report = json!({
                "command": "verify-shadow",
                "input": graph_stats(&g),
                "coefficient": rat_to_json(&coefficient),
                "t_free": rep.t_free,
                "bound_holds": rep.bound_holds,
                "pass": rep.pass,
            });
            let text = if !rep.t_free {
                "not tree-free; bound not tested\n".to_string()
            } else {
                format!(
                    "tree-free: yes\n{} <= {} * {}: {}\n",
                    rep.edge_count,
                    coefficient,
                    rep.shadow_size,
                    if rep.pass { "pass" } else { "FAIL" }
                )
            };
            Ok(if rep.pass {
                ok(report, text)
            } else {
                fail(report, text)
            })
        }
        Command::Construct { what } => construct(what),
        Command::Fuzz { seed, trials } => fuzz(*seed, *trials),
    }
}

fn construct(cmd: &ConstructCmd) -> Result<Outcome, Error> {
    let (name, g, extra) = match cmd {
        ConstructCmd::Complete { n, r } => ("complete", complete_hypergraph(*n, *r)?, None),
        ConstructCmd::Ekr { n, r } => ("ekr", ekr_family(*n, *r)?, None),
        ConstructCmd::Tournament {
            n,
            tournament,
            cyclic,
        } => {
            let d = match (tournament, cyclic) {
                (Some(path), false) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
                    })?;
                    text.parse::<Tournament>()?
                }
                (None, true) => Tournament::cyclic(n / 3)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "provide --tournament FILE or --cyclic".into(),
                    ))
                }
            };
            let g = tournament_family(*n, &d)?;
            // the all-pairs shadow identity needs every block to have an
            // out-arc; report the discrepancy for sink tournaments
            let q = n / 3;
            let sinks: Vec<usize> = (0..q).filter(|&i| d.out_degree(i) == 0).collect();
            let expected = n * (n - 1) / 2 - 3 * sinks.len();
            let extra = json!({
                "sinks": sinks,
                "shadow_expected": expected,
                "all_pairs": n * (n - 1) / 2,
            });
            ("tournament", g, Some(extra))
        }
        ConstructCmd::Cliques { n, t } => ("cliques", disjoint_cliques(*n, *t)?, None),
        ConstructCmd::Packing {
            input,
            n,
            grid,
            budget,
        } => {
            let template = load(input)?;
            let budget = budget.unwrap_or(u64::MAX);
            let pack = match grid {
                Some(side) => shadow_disjoint_packing_with_candidates(
                    &template,
                    *n,
                    grid_rows_and_columns(*side),
                    budget,
                )?,
                None => shadow_disjoint_packing(&template, *n, budget)?,
            };
            let extra = json!({
                "copies": pack.m,
                "vertex_sets": pack.vertex_sets,
            });
            ("packing", pack.union, Some(extra))
        }
    };
    let mut report = json!({
        "command": format!("construct-{name}"),
        "stats": graph_stats(&g),
        "hypergraph": g.to_text(),
    });
    if let Some(extra) = extra {
        report
            .as_object_mut()
            .expect("object report")
            .insert("details".into(), extra);
    }
    Ok(ok(report, g.to_text()))
}

/// Random-hypergraph identity sweeps: the weight identity and the sorted
/// codegree bound `d_i >= i/s` for `s` the edge's reciprocal codegree sum.
fn fuzz(seed: u64, trials: u64) -> Result<Outcome, Error> {
    use tighttree::arith::rat_int;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let r = 2 + (trial % 3) as usize;
        let n = r + 1 + (trial % 9) as usize;
        let g = random_hypergraph_seeded(seed ^ (trial.wrapping_mul(0x9e37_79b9)), r, n, 1, 2);
        if g.is_empty() {
            continue;
        }
        let w = default_weights(&g)?;
        if !w.identity_holds(&g) {
            failures.push(json!({"trial": trial, "check": "weight-identity"}));
        }
        let degrees = g.codegree_map();
        for e in g.edges() {
            let mut ds: Vec<usize> = tighttree::hypergraph::subsets_without_one(e)
                .into_iter()
                .map(|d| degrees[&d])
                .collect();
            ds.sort_unstable();
            let s: Rat = ds
                .iter()
                .map(|&d| rat_int(1) / rat_int(d))
                .fold(rat_int(0), |a, b| a + b);
            for (i, &d) in ds.iter().enumerate() {
                if rat_int(d) * s.clone() < rat_int(i + 1) {
                    failures.push(json!({
                        "trial": trial,
                        "check": "sorted-codegree-bound",
                        "edge": e,
                    }));
                }
            }
        }
    }
    let pass = failures.is_empty();
    let report = json!({
        "command": "fuzz",
        "seed": seed,
        "trials": trials,
        "failures": failures,
        "pass": pass,
    });
    let text = format!(
        "trials: {trials}\nverdict: {}\n",
        if pass { "pass" } else { "FAIL" }
    );
    Ok(if pass {
        ok(report, text)
    } else {
        fail(report, text)
    })
}
