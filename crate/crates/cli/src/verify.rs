use std::fmt::Write;

use clap::Args;
use mgiss::closure::{c4, lambda_nodes, lsca_closure, DEFAULT_ORACLE_BOUND};
use mgiss::{Dag, NodeId, NodeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{with_jobs, CliError, CliResult, Format, OutputArgs};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check every DAG on the identity order with up to this many nodes,
    /// against every node subset.
    #[arg(long, default_value_t = 5)]
    max_nodes: usize,
    /// Number of additional random DAGs.
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Largest random DAG.
    #[arg(long, default_value_t = 12)]
    random_nodes: usize,
    /// Refuse graphs larger than this for the exponential Λ-oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Swap in a deliberately broken C4 to exercise the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Serialize)]
struct Counterexample {
    nodes: usize,
    edges: Vec<(u32, u32)>,
    set: Vec<NodeId>,
    c4: Vec<NodeId>,
    closure: Vec<NodeId>,
    lambda: Vec<NodeId>,
}

#[derive(Debug, Serialize)]
struct Report {
    exhaustive_graphs: usize,
    exhaustive_cases: usize,
    random_graphs: usize,
    random_cases: usize,
    mismatches: usize,
}

/// Drops the highest-id node the closure added, so any graph where the
/// closure grows its input disagrees with the oracles.
fn faulty_c4(dag: &Dag, set: &NodeSet) -> NodeSet {
    let mut out = c4(dag, set).into_members();
    if let Some(&v) = out.iter().rev().find(|v| !set.contains(v)) {
        out.remove(&v);
    }
    out
}

struct Checker {
    bound: usize,
    faulty: bool,
}

impl Checker {
    fn check(&self, dag: &Dag, set: &NodeSet) -> Result<(), Box<Counterexample>> {
        let fast = if self.faulty {
            faulty_c4(dag, set)
        } else {
            c4(dag, set).into_members()
        };
        let fixed = lsca_closure(dag, set);
        let lambda = lambda_nodes(dag, set, self.bound).expect("size checked");
        if fast == fixed && fixed == lambda {
            return Ok(());
        }
        Err(Box::new(Counterexample {
            nodes: dag.node_count(),
            edges: dag.edges().map(|(a, b)| (a.0, b.0)).collect(),
            set: set.iter().copied().collect(),
            c4: fast.into_iter().collect(),
            closure: fixed.into_iter().collect(),
            lambda: lambda.into_iter().collect(),
        }))
    }
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn subset(n: usize, mask: u64) -> NodeSet {
    (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(NodeId::from)
        .collect()
}

fn random_case(seed: u64, max_nodes: usize) -> (Dag, NodeSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_nodes.max(1));
    let p = rng.random_range(0.1..0.6);
    let edges: Vec<_> = upper_pairs(n)
        .into_iter()
        .filter(|_| rng.random_bool(p))
        .collect();
    let dag = Dag::from_edges(n, &edges).expect("upper triangular");
    let q = rng.random_range(0.1..0.5);
    let set = (0..n)
        .filter(|_| rng.random_bool(q))
        .map(NodeId::from)
        .collect();
    (dag, set)
}

type Outcome = (usize, Option<Box<Counterexample>>);

fn first_failure(outcomes: Vec<Outcome>) -> (usize, usize, Option<Box<Counterexample>>) {
    let cases = outcomes.iter().map(|o| o.0).sum();
    let failures = outcomes.iter().filter(|o| o.1.is_some()).count();
    let first = outcomes.into_iter().find_map(|o| o.1);
    (cases, failures, first)
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    if args.max_nodes > args.oracle_bound || args.random_nodes > args.oracle_bound {
        return Err(CliError::Input(format!(
            "graph sizes must not exceed the oracle bound {}",
            args.oracle_bound
        )));
    }
    if args.max_nodes > 8 {
        return Err(CliError::Input(
            "exhaustive checking is limited to 8 nodes".into(),
        ));
    }
    let checker = Checker {
        bound: args.oracle_bound,
        faulty: args.inject_fault,
    };

    let exhaustive: Vec<(usize, u64)> = (1..=args.max_nodes)
        .flat_map(|n| (0..1u64 << upper_pairs(n).len()).map(move |m| (n, m)))
        .collect();
    let (report, first) = with_jobs(args.jobs, || {
        let ex: Vec<Outcome> = exhaustive
            .par_iter()
            .map(|&(n, edge_mask)| {
                let pairs = upper_pairs(n);
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| edge_mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let dag = Dag::from_edges(n, &edges).expect("upper triangular");
                let mut bad = None;
                for set_mask in 0..1u64 << n {
                    if let Err(c) = checker.check(&dag, &subset(n, set_mask)) {
                        bad = Some(c);
                        break;
                    }
                }
                (1usize << n, bad)
            })
            .collect();
        let rnd: Vec<Outcome> = (0..args.count)
            .into_par_iter()
            .map(|i| {
                let (dag, set) = random_case(args.seed.wrapping_add(i as u64), args.random_nodes);
                (1, checker.check(&dag, &set).err())
            })
            .collect();
        let (ex_cases, ex_fail, ex_first) = first_failure(ex);
        let (rnd_cases, rnd_fail, rnd_first) = first_failure(rnd);
        (
            Report {
                exhaustive_graphs: exhaustive.len(),
                exhaustive_cases: ex_cases,
                random_graphs: args.count,
                random_cases: rnd_cases,
                mismatches: ex_fail + rnd_fail,
            },
            ex_first.or(rnd_first),
        )
    })?;

    if let Some(c) = first {
        let json = serde_json::json!({ "report": report, "counterexample": c });
        return Err(CliError::Verification(
            serde_json::to_string_pretty(&json).expect("serializable"),
        ));
    }
    let text = match args.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "exhaustive: {} graphs, {} cases",
                report.exhaustive_graphs, report.exhaustive_cases
            )
            .unwrap();
            writeln!(s, "random: {} graphs", report.random_graphs).unwrap();
            writeln!(s, "mismatches: 0").unwrap();
            s
        }
        _ => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
    };
    args.output.emit(&text)
}
