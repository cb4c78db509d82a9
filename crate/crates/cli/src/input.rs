use std::path::Path;

use clap::ValueEnum;
use mgiss::graphgen::select_target;
use mgiss::io::{parse_graph, GraphFormat};
use mgiss::scm::{spec_file::parse_scm, Scm};
use mgiss::{Dag, NodeId};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    EdgeList,
    Dot,
    Bif,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn read_graph(path: &Path, format: Option<InputFormat>) -> CliResult<Dag> {
    let format = match format {
        Some(InputFormat::EdgeList) => GraphFormat::EdgeList,
        Some(InputFormat::Dot) => GraphFormat::Dot,
        Some(InputFormat::Bif) => GraphFormat::Bif,
        None => GraphFormat::from_path(path),
    };
    parse_graph(&read(path)?, format)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_scm(path: &Path) -> CliResult<Scm> {
    parse_scm(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A node by label, else by numeric id.
pub fn resolve_node(dag: &Dag, name: &str) -> Option<NodeId> {
    dag.find_label(name).or_else(|| {
        name.parse::<usize>()
            .ok()
            .filter(|&i| i < dag.node_count())
            .map(NodeId::from)
    })
}

/// `auto` picks the multi-parent node with the most ancestors.
pub fn resolve_target(dag: &Dag, name: &str) -> CliResult<NodeId> {
    let y = if name == "auto" {
        select_target(dag)
            .ok_or_else(|| CliError::Target("no node has more than one parent".into()))?
    } else {
        resolve_node(dag, name)
            .ok_or_else(|| CliError::Target(format!("target {name:?} not found")))?
    };
    if dag.parents(y).is_empty() {
        return Err(CliError::Target(format!(
            "target {} has no parents",
            dag.label(y)
        )));
    }
    Ok(y)
}
