//! Adversarial binary SCMs used to certify that a node cannot be dropped.
//!
//! All non-reward variables are binary and `1_{>0}` is the unit step. The
//! reward node gets range 4, enough for `2·x + 1`.

use super::{Scm, ScmError, Value};
use crate::graph::{Dag, NodeId, Path};

const REWARD_RANGE: u32 = 4;
const FAIR: [f64; 2] = [0.5, 0.5];
const ZERO: [f64; 1] = [1.0];

fn step(sum: Value) -> Value {
    (sum > 0) as Value
}

/// Sum of the parent values of `v`, skipping the listed parents.
fn sum_except(parents: &[NodeId], values: &[Value], skip: &[NodeId]) -> Value {
    parents
        .iter()
        .zip(values)
        .filter(|(p, _)| !skip.contains(p))
        .map(|(_, &x)| x)
        .sum()
}

fn value_of(parents: &[NodeId], values: &[Value], node: NodeId) -> Value {
    parents
        .iter()
        .position(|&p| p == node)
        .map(|i| values[i])
        .expect("caller checked the edge")
}

fn check_node(dag: &Dag, node: NodeId) -> Result<(), ScmError> {
    if node.index() < dag.node_count() {
        Ok(())
    } else {
        Err(ScmError::UnknownNode { node })
    }
}

fn ranges_for(dag: &Dag, y: NodeId) -> Vec<u32> {
    dag.nodes()
        .map(|v| if v == y { REWARD_RANGE } else { 2 })
        .collect()
}

/// Witness for a parent `b` of `y`: `b` outweighs all other parents of `y`
/// combined and is free of its own parents whenever its noise is 0.
pub fn witness_parent(dag: &Dag, y: NodeId, b: NodeId) -> Result<Scm, ScmError> {
    check_node(dag, y)?;
    check_node(dag, b)?;
    if !dag.has_edge(b, y) {
        return Err(ScmError::NotAParent { b, y });
    }
    let noise = dag
        .nodes()
        .map(|v| if v == b { FAIR.to_vec() } else { ZERO.to_vec() })
        .collect();
    Scm::from_fn(dag.clone(), ranges_for(dag, y), noise, |v, pa, e| {
        let parents = dag.parents(v);
        if v == y {
            2 * value_of(parents, pa, b) + step(sum_except(parents, pa, &[b])) + e
        } else if v == b {
            e * (1 - step(pa.iter().sum()))
        } else {
            step(pa.iter().sum()) + e
        }
    })
}

/// Witness for a closure member `b` outside `Pa(y)`, given the two paths of
/// its Λ-structure into parents of `y`. Path nodes copy their predecessor,
/// so at the zero unit only an intervention on `b` sets both endpoints.
///
/// Path nodes saturate at 1 to stay binary when noise and side inputs are
/// both active.
pub fn witness_lambda(
    dag: &Dag,
    y: NodeId,
    b: NodeId,
    path1: &Path,
    path2: &Path,
) -> Result<Scm, ScmError> {
    check_node(dag, y)?;
    check_node(dag, b)?;
    let bad = |msg: &str| ScmError::InvalidLambdaPaths(msg.to_string());
    for p in [path1, path2] {
        if !p.is_valid_in(dag) {
            return Err(bad("not a directed path of the graph"));
        }
        if p.start() != Some(b) || p.nodes().len() < 2 {
            return Err(bad("paths must leave b"));
        }
    }
    let (a1, a2) = (path1.end().unwrap(), path2.end().unwrap());
    if !dag.has_edge(a1, y) || !dag.has_edge(a2, y) {
        return Err(bad("endpoints must be parents of y"));
    }
    if path1.nodes()[1..].iter().any(|&v| path2.contains(v)) {
        return Err(bad("paths intersect beyond b"));
    }
    if path1.contains(y) || path2.contains(y) {
        return Err(bad("paths must not pass through y"));
    }

    let mut pred: Vec<Option<NodeId>> = vec![None; dag.node_count()];
    for p in [path1, path2] {
        for w in p.nodes().windows(2) {
            pred[w[1].index()] = Some(w[0]);
        }
    }
    let noise = dag
        .nodes()
        .map(|v| {
            if v == b || pred[v.index()].is_some() {
                FAIR.to_vec()
            } else {
                ZERO.to_vec()
            }
        })
        .collect();
    Scm::from_fn(dag.clone(), ranges_for(dag, y), noise, |v, pa, e| {
        let parents = dag.parents(v);
        if v == y {
            let ends = value_of(parents, pa, a1) * value_of(parents, pa, a2);
            2 * ends + step(sum_except(parents, pa, &[a1, a2])) + e
        } else if v == b {
            e * (1 - step(pa.iter().sum()))
        } else if let Some(prev) = pred[v.index()] {
            let copy = value_of(parents, pa, prev) + e * step(sum_except(parents, pa, &[prev]));
            copy.min(1)
        } else {
            step(pa.iter().sum()) + e
        }
    })
}

/// Witness that any node off a path `w ⇢ y` is not superior to `w`:
/// `do(w = 1)` at the zero unit yields `y = 2`, everything else yields 0.
pub fn witness_path(dag: &Dag, y: NodeId, w: NodeId, path: &Path) -> Result<Scm, ScmError> {
    check_node(dag, y)?;
    check_node(dag, w)?;
    let bad = |msg: &str| ScmError::InvalidPath(msg.to_string());
    if !path.is_valid_in(dag) {
        return Err(bad("not a directed path of the graph"));
    }
    if path.start() != Some(w) || path.end() != Some(y) || path.nodes().len() < 2 {
        return Err(bad("path must run from w to y"));
    }
    let nodes = path.nodes();
    let a = nodes[nodes.len() - 2];
    let mut pred: Vec<Option<NodeId>> = vec![None; dag.node_count()];
    for win in nodes[..nodes.len() - 1].windows(2) {
        pred[win[1].index()] = Some(win[0]);
    }
    let noise = vec![FAIR.to_vec(); dag.node_count()];
    Scm::from_fn(dag.clone(), ranges_for(dag, y), noise, |v, pa, e| {
        let parents = dag.parents(v);
        if v == y {
            2 * value_of(parents, pa, a) + e * step(sum_except(parents, pa, &[a]))
        } else if let Some(prev) = pred[v.index()] {
            let copy = value_of(parents, pa, prev) + e * step(sum_except(parents, pa, &[prev]));
            copy.min(1)
        } else {
            e * step(pa.iter().sum())
        }
    })
}

/// Four binary nodes `Z, W, A, Y` with fair-coin roots, `A = Z ⊕ W` and
/// `Y = A ⊕ W`.
pub fn xor_counterexample() -> Scm {
    let dag = Dag::from_edges(4, &[(0, 2), (1, 2), (1, 3), (2, 3)])
        .and_then(|d| d.with_labels(["Z", "W", "A", "Y"].map(String::from).to_vec()))
        .expect("fixed graph");
    let noise = vec![FAIR.to_vec(), FAIR.to_vec(), ZERO.to_vec(), ZERO.to_vec()];
    Scm::from_fn(dag, vec![2; 4], noise, |v, pa, e| match v.index() {
        0 | 1 => e,
        _ => pa[0] ^ pa[1],
    })
    .expect("fixed model")
}
