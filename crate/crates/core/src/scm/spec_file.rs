//! JSON model files.
//!
//! ```json
//! {
//!   "nodes": [
//!     { "name": "Z", "range": 2, "noise": [0.5, 0.5] },
//!     { "name": "Y", "range": 2, "noise": [1.0] }
//!   ],
//!   "edges": [["Z", "Y"]],
//!   "assignments": {
//!     "Z": [0, 1],
//!     "Y": [1, 0]
//!   }
//! }
//! ```
//!
//! `range` is the number of values `0..range`. `noise[k]` is the probability
//! of noise value `k`. Each assignment is the flat table of the node, rows
//! ordered by parent values with parents in node declaration order (last
//! parent fastest) and the noise value varying fastest within a row. Every
//! node needs an assignment.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Mechanism, Scm, ScmError, Value};
use crate::graph::{Dag, GraphError, NodeId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub name: String,
    pub range: u32,
    pub noise: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScmSpec {
    pub nodes: Vec<NodeSpec>,
    pub edges: Vec<(String, String)>,
    pub assignments: BTreeMap<String, Vec<Value>>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed model file at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate node name {0:?}")]
    DuplicateNode(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("no assignment for node {0:?}")]
    MissingAssignment(String),
    #[error("node {0:?} carries a policy, which has no file representation")]
    UnsupportedMechanism(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ScmError),
}

impl ScmSpec {
    pub fn into_scm(self) -> Result<Scm, SpecError> {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if ids.insert(node.name.as_str(), i).is_some() {
                return Err(SpecError::DuplicateNode(node.name.clone()));
            }
        }
        let lookup = |name: &str| {
            ids.get(name)
                .copied()
                .ok_or_else(|| SpecError::UnknownNode(name.to_string()))
        };
        let edges = self
            .edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, SpecError>>()?;
        if let Some(name) = self
            .assignments
            .keys()
            .find(|k| !ids.contains_key(k.as_str()))
        {
            return Err(SpecError::UnknownNode(name.clone()));
        }
        let dag = Dag::from_edges(self.nodes.len(), &edges)?
            .with_labels(self.nodes.iter().map(|n| n.name.clone()).collect())?;
        let mut assignments = self.assignments;
        let tables = self
            .nodes
            .iter()
            .map(|n| {
                assignments
                    .remove(&n.name)
                    .ok_or_else(|| SpecError::MissingAssignment(n.name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ranges = self.nodes.iter().map(|n| n.range).collect();
        let noise = self.nodes.into_iter().map(|n| n.noise).collect();
        Ok(Scm::new(dag, ranges, noise, tables)?)
    }

    pub fn from_scm(scm: &Scm) -> Result<ScmSpec, SpecError> {
        let dag = scm.dag();
        let name = |v: NodeId| dag.label(v);
        let mut assignments = BTreeMap::new();
        for v in dag.nodes() {
            match scm.mechanism(v) {
                Mechanism::Table(t) => {
                    assignments.insert(name(v), t.clone());
                }
                Mechanism::Policy { .. } => return Err(SpecError::UnsupportedMechanism(name(v))),
            }
        }
        Ok(ScmSpec {
            nodes: dag
                .nodes()
                .map(|v| NodeSpec {
                    name: name(v),
                    range: scm.range(v),
                    noise: scm.noise(v).to_vec(),
                })
                .collect(),
            edges: dag.edges().map(|(a, b)| (name(a), name(b))).collect(),
            assignments,
        })
    }
}

pub fn parse_scm(text: &str) -> Result<Scm, SpecError> {
    let spec: ScmSpec = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.into_scm()
}

pub fn write_scm(scm: &Scm) -> Result<String, SpecError> {
    let spec = ScmSpec::from_scm(scm)?;
    Ok(serde_json::to_string_pretty(&spec).expect("spec serializes"))
}
