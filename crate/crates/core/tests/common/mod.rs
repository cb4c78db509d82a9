#![allow(dead_code)]

pub mod lemmas;

use mgiss::{Dag, NodeId, NodeSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// DAG on the identity order whose edges are the set bits of `mask` over
/// [`upper_pairs`].
pub fn dag_from_mask(n: usize, mask: u64) -> Dag {
    let edges: Vec<_> = upper_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Dag::from_edges(n, &edges).unwrap()
}

/// Every labeled DAG on the identity order with `n` nodes.
pub fn all_dags(n: usize) -> impl Iterator<Item = Dag> {
    let m = upper_pairs(n).len();
    (0..1u64 << m).map(move |mask| dag_from_mask(n, mask))
}

pub fn subset(n: usize, mask: u64) -> NodeSet {
    (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(NodeId::from)
        .collect()
}

/// Random DAG with edge probability `p` and shuffled node ids, so the
/// topological order is not the identity.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = upper_pairs(n)
        .into_iter()
        .filter(|_| rng.random_bool(p))
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    Dag::from_edges(n, &edges).unwrap()
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize, q: f64) -> NodeSet {
    (0..n)
        .filter(|_| rng.random_bool(q))
        .map(NodeId::from)
        .collect()
}

/// Every directed path `from ⇢ to`, including the trivial one when equal.
pub fn all_paths(dag: &Dag, from: NodeId, to: NodeId) -> Vec<Vec<NodeId>> {
    fn go(dag: &Dag, to: NodeId, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let last = *path.last().unwrap();
        if last == to {
            out.push(path.clone());
            return;
        }
        for &c in dag.children(last) {
            path.push(c);
            go(dag, to, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(dag, to, &mut vec![from], &mut out);
    out
}

pub fn has_path(dag: &Dag, from: NodeId, to: NodeId) -> bool {
    !all_paths(dag, from, to).is_empty()
}

/// Is there a path `from ⇢ to` that never visits `avoid`?
pub fn has_path_avoiding(dag: &Dag, from: NodeId, to: NodeId, avoid: NodeId) -> bool {
    all_paths(dag, from, to).iter().any(|p| !p.contains(&avoid))
}

/// Members of `cands` from which no other member is reachable.
pub fn lowest(dag: &Dag, cands: &NodeSet) -> NodeSet {
    cands
        .iter()
        .copied()
        .filter(|&z| !cands.iter().any(|&w| w != z && has_path(dag, z, w)))
        .collect()
}

pub fn oracle_sca(dag: &Dag, x: NodeId, y: NodeId) -> NodeSet {
    if x == y {
        return NodeSet::new();
    }
    dag.nodes()
        .filter(|&z| has_path_avoiding(dag, z, x, y) && has_path_avoiding(dag, z, y, x))
        .collect()
}

/// Fixed point of adding pairwise lowest strict common ancestors, with
/// every ingredient computed by path enumeration.
pub fn oracle_closure(dag: &Dag, set: &NodeSet) -> NodeSet {
    let mut cur = set.clone();
    loop {
        let members: Vec<NodeId> = cur.iter().copied().collect();
        let mut next = cur.clone();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                next.extend(lowest(dag, &oracle_sca(dag, a, b)));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Closure members reachable from `v` by a path whose nodes before the
/// last one all lie outside `closure`.
pub fn uninterrupted_hits(dag: &Dag, v: NodeId, closure: &NodeSet) -> NodeSet {
    if closure.contains(&v) {
        return [v].into();
    }
    let mut hits = NodeSet::new();
    let mut seen = vec![false; dag.node_count()];
    let mut stack = vec![v];
    seen[v.index()] = true;
    while let Some(u) = stack.pop() {
        for &c in dag.children(u) {
            if seen[c.index()] {
                continue;
            }
            seen[c.index()] = true;
            if closure.contains(&c) {
                hits.insert(c);
            } else {
                stack.push(c);
            }
        }
    }
    hits
}
