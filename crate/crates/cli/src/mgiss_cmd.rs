use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;
use mgiss::closure::mgiss_with_connectors;
use serde::Serialize;

use crate::input::{read_graph, resolve_target, InputFormat};
use crate::{CliError, CliResult, Format, OutputArgs};

#[derive(Debug, Args)]
pub struct MgissArgs {
    /// Graph file (edge list, .dot or .bif).
    #[arg(long)]
    graph: PathBuf,
    /// Target label, numeric id, or `auto`.
    #[arg(long, default_value = "auto")]
    target: String,
    /// Override format detection from the file extension.
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct Connector {
    node: String,
    connector: Option<String>,
}

#[derive(Serialize)]
struct Report {
    target: String,
    members: Vec<String>,
    n_proper_ancestors: usize,
    connectors: Vec<Connector>,
}

pub fn run(args: &MgissArgs) -> CliResult<()> {
    let dag = read_graph(&args.graph, args.input_format)?;
    let y = resolve_target(&dag, &args.target)?;
    let result = mgiss_with_connectors(&dag, y);
    let report = Report {
        target: dag.label(y),
        members: result.members().iter().map(|&v| dag.label(v)).collect(),
        n_proper_ancestors: dag.proper_ancestors(y).len(),
        connectors: dag
            .nodes()
            .map(|v| Connector {
                node: dag.label(v),
                connector: result.connector_of(v).map(|c| dag.label(c)),
            })
            .collect(),
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "target: {}", report.target).unwrap();
            writeln!(s, "members: {}", report.members.join(" ")).unwrap();
            writeln!(
                s,
                "kept {} of {} proper ancestors",
                report.members.len(),
                report.n_proper_ancestors
            )
            .unwrap();
            writeln!(s, "connectors:").unwrap();
            for c in &report.connectors {
                writeln!(
                    s,
                    "  {} -> {}",
                    c.node,
                    c.connector.as_deref().unwrap_or("-")
                )
                .unwrap();
            }
            s
        }
        Format::Csv => {
            return Err(CliError::Input(
                "csv output is not available for mgiss".into(),
            ));
        }
    };
    args.output.emit(&text)
}
