//! LSCA closure and the linear-time connector propagation (C4) that computes
//! it, plus the minimal globally interventionally superior set built on top.
//!
//! For a node set `U`, the closure `L∞(U)` is the fixed point of adding the
//! lowest strict common ancestors of the current set. C4 computes the same
//! set in one reverse-topological sweep by tracking, for each node, its
//! *connector*: the unique closure member reachable from it by a path whose
//! interior avoids the closure.

mod lambda;

pub use lambda::{find_lambda_structure, lambda_nodes, LambdaStructure, OracleError};

use crate::graph::{Dag, NodeId, NodeSet};

/// Default node bound for the exponential oracles.
pub const DEFAULT_ORACLE_BOUND: usize = 15;

/// Output of [`c4`]: per-node connectors and the closure members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectorResult {
    connector: Vec<Option<NodeId>>,
    members: NodeSet,
}

impl ConnectorResult {
    /// The closure `L∞(U)`.
    pub fn members(&self) -> &NodeSet {
        &self.members
    }

    pub fn into_members(self) -> NodeSet {
        self.members
    }

    pub fn connectors(&self) -> &[Option<NodeId>] {
        &self.connector
    }

    /// The connector of `v`, or `None` when no closure member is a
    /// descendant of `v`.
    pub fn connector_of(&self, v: NodeId) -> Option<NodeId> {
        self.connector[v.index()]
    }
}

/// Elementary-operation counts from one C4 sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkCounter {
    pub node_visits: u64,
    pub child_inspections: u64,
}

impl WorkCounter {
    pub fn total(&self) -> u64 {
        self.node_visits + self.child_inspections
    }
}

/// Computes the LSCA closure of `set` and every node's connector.
pub fn c4(dag: &Dag, set: &NodeSet) -> ConnectorResult {
    c4_counted(dag, set).0
}

/// [`c4`] that also reports how much work the sweep performed.
pub fn c4_counted(dag: &Dag, set: &NodeSet) -> (ConnectorResult, WorkCounter) {
    let n = dag.node_count();
    let mut connector: Vec<Option<NodeId>> = vec![None; n];
    let mut in_set = vec![false; n];
    for &u in set {
        connector[u.index()] = Some(u);
        in_set[u.index()] = true;
    }
    let mut members = set.clone();
    let mut work = WorkCounter::default();

    for &v in dag.topo_order().iter().rev() {
        work.node_visits += 1;
        if in_set[v.index()] {
            continue;
        }
        let mut seen: Option<NodeId> = None;
        let mut several = false;
        for &c in dag.children(v) {
            work.child_inspections += 1;
            if let Some(z) = connector[c.index()] {
                match seen {
                    None => seen = Some(z),
                    Some(s) if s != z => {
                        several = true;
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
        connector[v.index()] = if several {
            members.insert(v);
            Some(v)
        } else {
            seen
        };
    }

    (ConnectorResult { connector, members }, work)
}

/// The LSCA closure by direct fixed-point iteration of its definition.
/// Polynomial but slow; used as a reference for [`c4`].
pub fn lsca_closure(dag: &Dag, set: &NodeSet) -> NodeSet {
    let mut current = set.clone();
    loop {
        let added = dag.lsca_set(&current);
        if added.is_empty() {
            return current;
        }
        current.extend(added);
    }
}

/// Minimal globally interventionally superior set for target `y`:
/// the closure of `y`'s parents. Empty when `y` has no parents.
pub fn mgiss(dag: &Dag, y: NodeId) -> NodeSet {
    mgiss_with_connectors(dag, y).into_members()
}

/// The C4 result over `Pa(y)`, so callers can also inspect connectors.
pub fn mgiss_with_connectors(dag: &Dag, y: NodeId) -> ConnectorResult {
    let parents: NodeSet = dag.parents(y).iter().copied().collect();
    c4(dag, &parents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::node_set;

    fn diamond() -> Dag {
        Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let d = diamond();
        assert_eq!(lsca_closure(&d, &NodeSet::new()), NodeSet::new());
        assert_eq!(lsca_closure(&d, &node_set([2])), node_set([2]));
        assert_eq!(lsca_closure(&d, &node_set([1, 2])), node_set([0, 1, 2]));
    }

    #[test]
    fn c4_on_diamond() {
        let r = c4(&diamond(), &node_set([1, 2]));
        assert_eq!(r.members(), &node_set([0, 1, 2]));
        assert_eq!(r.connector_of(NodeId(0)), Some(NodeId(0)));
        assert_eq!(r.connector_of(NodeId(1)), Some(NodeId(1)));
        assert_eq!(r.connector_of(NodeId(3)), None);
    }

    #[test]
    fn c4_on_chain() {
        let d = Dag::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = c4(&d, &node_set([1]));
        assert_eq!(r.members(), &node_set([1]));
        assert_eq!(r.connector_of(NodeId(0)), Some(NodeId(1)));
        assert_eq!(r.connector_of(NodeId(2)), None);
    }

    #[test]
    fn worked_example_graph() {
        let g = fixtures::nested_parents();
        let id = |s: &str| g.find_label(s).unwrap();
        let u: NodeSet = [id("A1"), id("A2")].into_iter().collect();
        let expected: NodeSet = ["Z", "X1", "A1", "A2"].iter().map(|s| id(s)).collect();
        assert_eq!(lsca_closure(&g, &u), expected);
        assert_eq!(c4(&g, &u).members(), &expected);
        // first iteration adds only X1
        assert_eq!(g.lsca_set(&u), [id("X1")].into_iter().collect());
    }

    #[test]
    fn mgiss_examples() {
        // A -> B -> Y: only the single parent matters
        let d = Dag::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(mgiss(&d, NodeId(2)), node_set([1]));
        assert_eq!(mgiss(&diamond(), NodeId(3)), node_set([0, 1, 2]));
        assert!(mgiss(&diamond(), NodeId(0)).is_empty());
    }

    #[test]
    fn work_is_nodes_plus_edges_at_most() {
        let d = diamond();
        let (_, w) = c4_counted(&d, &node_set([1, 2]));
        assert_eq!(w.node_visits, 4);
        assert!(w.child_inspections <= d.edge_count() as u64);
    }
}
