use std::path::PathBuf;

use clap::{Args, ValueEnum};
use mgiss::closure::find_lambda_structure;
use mgiss::graphgen::{gen_er_dag, ErConfig};
use mgiss::io::{write_dot, write_edge_list};
use mgiss::scm::spec_file::write_scm;
use mgiss::scm::{witness_lambda, witness_parent, xor_counterexample, Scm};
use mgiss::{Dag, NodeId, NodeSet};

use crate::input::{read_graph, resolve_node, resolve_target, InputFormat};
use crate::{CliError, CliResult, OutputArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Random DAG on the identity order.
    Er,
    /// The four-node XOR model.
    Xor,
    /// Model in which the given parent of the target cannot be replaced.
    WitnessParent,
    /// Model in which the given non-parent closure member cannot be replaced.
    WitnessLambda,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 5.0)]
    degree: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph for the witness models.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Reward node of the witness models.
    #[arg(long, default_value = "auto")]
    target: String,
    /// Node the witness protects.
    #[arg(long)]
    node: Option<String>,
    /// Output format for generated graphs.
    #[arg(long, value_enum, default_value = "edge-list")]
    graph_format: InputFormat,
    #[command(flatten)]
    output: OutputArgs,
}

fn witness_inputs(args: &GenArgs) -> CliResult<(Dag, NodeId, NodeId)> {
    let path = args
        .graph
        .as_ref()
        .ok_or_else(|| CliError::Input("--graph is required for witness models".into()))?;
    let dag = read_graph(path, args.input_format)?;
    let y = resolve_target(&dag, &args.target)?;
    let name = args
        .node
        .as_deref()
        .ok_or_else(|| CliError::Input("--node is required for witness models".into()))?;
    let b = resolve_node(&dag, name)
        .ok_or_else(|| CliError::Target(format!("node {name:?} not found")))?;
    Ok((dag, y, b))
}

fn model_json(scm: &Scm) -> CliResult<String> {
    write_scm(scm)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Input(e.to_string()))
}

pub fn run(args: &GenArgs) -> CliResult<()> {
    let text = match args.kind {
        Kind::Er => {
            let dag = gen_er_dag(&ErConfig::new(args.n, args.degree, args.seed))
                .map_err(|e| CliError::Input(e.to_string()))?;
            let labels = dag.nodes().map(|v| v.to_string()).collect();
            let dag = dag.with_labels(labels).expect("one label per node");
            match args.graph_format {
                InputFormat::EdgeList => write_edge_list(&dag),
                InputFormat::Dot => write_dot(&dag),
                InputFormat::Bif => {
                    return Err(CliError::Input("BIF output is not supported".into()));
                }
            }
        }
        Kind::Xor => model_json(&xor_counterexample())?,
        Kind::WitnessParent => {
            let (dag, y, b) = witness_inputs(args)?;
            let scm = witness_parent(&dag, y, b).map_err(|e| CliError::Input(e.to_string()))?;
            model_json(&scm)?
        }
        Kind::WitnessLambda => {
            let (dag, y, b) = witness_inputs(args)?;
            let parents: NodeSet = dag.parents(y).iter().copied().collect();
            if parents.contains(&b) {
                return Err(CliError::Input(format!(
                    "{} is a parent of the target; use witness-parent",
                    dag.label(b)
                )));
            }
            let lambda = find_lambda_structure(&dag, b, &parents).ok_or_else(|| {
                CliError::Input(format!(
                    "{} is not in the minimal superior set of {}",
                    dag.label(b),
                    dag.label(y)
                ))
            })?;
            let scm = witness_lambda(&dag, y, b, &lambda.path_a, &lambda.path_b)
                .map_err(|e| CliError::Input(e.to_string()))?;
            model_json(&scm)?
        }
    };
    args.output.emit(&text)
}
