//! Brute-force Λ-structure oracle.
//!
//! A node `v` forms a Λ-structure over `(U, U)` when two paths leave `v`,
//! end in `U`, and share no node but `v`. Members of `U` qualify trivially.
//! The search enumerates every path from `v` that stops at its first member
//! of `U`, and for each one asks whether `U` is still reachable from `v`
//! once that path is deleted. This is exponential and bounded on purpose.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Dag, NodeId, NodeSet, Path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {nodes} nodes, oracle bound is {bound}")]
    GraphTooLarge { nodes: usize, bound: usize },
}

/// An apex with two paths that intersect only at the apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaStructure {
    pub apex: NodeId,
    pub path_a: Path,
    pub path_b: Path,
}

impl LambdaStructure {
    /// Checks the defining properties against `dag` and the endpoint set.
    pub fn is_valid(&self, dag: &Dag, ends: &NodeSet) -> bool {
        let (a, b) = (&self.path_a, &self.path_b);
        a.is_valid_in(dag)
            && b.is_valid_in(dag)
            && a.start() == Some(self.apex)
            && b.start() == Some(self.apex)
            && a.end().is_some_and(|e| ends.contains(&e))
            && b.end().is_some_and(|e| ends.contains(&e))
            && a.nodes()
                .iter()
                .filter(|v| b.contains(**v))
                .all(|&v| v == self.apex)
    }
}

/// All nodes forming a Λ-structure over `(set, set)`.
pub fn lambda_nodes(dag: &Dag, set: &NodeSet, bound: usize) -> Result<NodeSet, OracleError> {
    if dag.node_count() > bound {
        return Err(OracleError::GraphTooLarge {
            nodes: dag.node_count(),
            bound,
        });
    }
    let search = Search::new(dag, set);
    Ok(dag
        .nodes()
        .filter(|&v| set.contains(&v) || search.find(v).is_some())
        .collect())
}

/// A Λ-structure with apex `apex` over `(ends, ends)`, if one exists.
/// For `apex ∈ ends` this is the degenerate structure of two trivial paths.
pub fn find_lambda_structure(dag: &Dag, apex: NodeId, ends: &NodeSet) -> Option<LambdaStructure> {
    if ends.contains(&apex) {
        return Some(LambdaStructure {
            apex,
            path_a: Path(vec![apex]),
            path_b: Path(vec![apex]),
        });
    }
    Search::new(dag, ends).find(apex)
}

struct Search<'a> {
    dag: &'a Dag,
    is_end: Vec<bool>,
    reaches_end: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(dag: &'a Dag, ends: &NodeSet) -> Self {
        let n = dag.node_count();
        let mut is_end = vec![false; n];
        let mut reaches_end = vec![false; n];
        for &u in ends {
            is_end[u.index()] = true;
        }
        for &v in dag.topo_order().iter().rev() {
            reaches_end[v.index()] =
                is_end[v.index()] || dag.children(v).iter().any(|c| reaches_end[c.index()]);
        }
        Search {
            dag,
            is_end,
            reaches_end,
        }
    }

    /// Apex must not be an end.
    fn find(&self, apex: NodeId) -> Option<LambdaStructure> {
        if !self.reaches_end[apex.index()] {
            return None;
        }
        let mut on_path = vec![false; self.dag.node_count()];
        let mut path = vec![apex];
        on_path[apex.index()] = true;
        self.extend(&mut path, &mut on_path)
    }

    fn extend(&self, path: &mut Vec<NodeId>, on_path: &mut [bool]) -> Option<LambdaStructure> {
        let last = *path.last().expect("path is never empty");
        if path.len() > 1 && self.is_end[last.index()] {
            return self
                .second_path(path, on_path)
                .map(|other| LambdaStructure {
                    apex: path[0],
                    path_a: Path(path.clone()),
                    path_b: Path(other),
                });
        }
        for &c in self.dag.children(last) {
            if !self.reaches_end[c.index()] {
                continue;
            }
            path.push(c);
            on_path[c.index()] = true;
            let found = self.extend(path, on_path);
            on_path[c.index()] = false;
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// BFS from the apex through nodes off `taken`, to any end.
    fn second_path(&self, taken: &[NodeId], on_path: &[bool]) -> Option<Vec<NodeId>> {
        let apex = taken[0];
        let n = self.dag.node_count();
        let mut prev: Vec<Option<NodeId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &c in self.dag.children(apex) {
            if !on_path[c.index()] && !seen[c.index()] {
                seen[c.index()] = true;
                prev[c.index()] = Some(apex);
                queue.push_back(c);
            }
        }
        while let Some(u) = queue.pop_front() {
            if self.is_end[u.index()] {
                let mut out = vec![u];
                let mut cur = u;
                while let Some(p) = prev[cur.index()] {
                    out.push(p);
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            for &c in self.dag.children(u) {
                if !on_path[c.index()] && !seen[c.index()] && self.reaches_end[c.index()] {
                    seen[c.index()] = true;
                    prev[c.index()] = Some(u);
                    queue.push_back(c);
                }
            }
        }
        None
    }
}
