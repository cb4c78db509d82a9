//! Immutable DAG over dense node ids, with the ancestor order and the
//! common-ancestor family (CA, LCA, SCA, LSCA).

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node index into a [`Dag`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered node sets are returned everywhere so outputs are reproducible.
pub type NodeSet = BTreeSet<NodeId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a node outside 0..{2}")]
    NodeOutOfRange(NodeId, NodeId, usize),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge set contains a directed cycle")]
    CycleDetected,
    #[error("label table has {labels} entries for {nodes} nodes")]
    LabelCount { labels: usize, nodes: usize },
}

/// A directed path; a single node is a valid (trivial) path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path(pub Vec<NodeId>);

impl Path {
    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn start(&self) -> Option<NodeId> {
        self.0.first().copied()
    }

    pub fn end(&self) -> Option<NodeId> {
        self.0.last().copied()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.contains(&v)
    }

    /// True when every consecutive pair is an edge of `dag`.
    pub fn is_valid_in(&self, dag: &Dag) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|v| v.index() < dag.node_count())
            && self.0.windows(2).all(|w| dag.has_edge(w[0], w[1]))
    }
}

/// Directed acyclic graph with sorted adjacency in both directions.
///
/// Acyclicity is checked at construction, and a topological order (Kahn,
/// ties broken by ascending id) is cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    children: Vec<Vec<NodeId>>,
    parents: Vec<Vec<NodeId>>,
    labels: Option<Vec<String>>,
    topo: Vec<NodeId>,
    edge_count: usize,
}

impl Dag {
    pub fn new(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        let mut children = vec![Vec::new(); node_count];
        let mut parents = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u.index() >= node_count || v.index() >= node_count {
                return Err(GraphError::NodeOutOfRange(u, v, node_count));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            children[u.index()].push(v);
            parents[v.index()].push(u);
        }
        for (u, list) in children.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(NodeId::from(u), w[0]));
            }
        }
        for list in parents.iter_mut() {
            list.sort_unstable();
        }
        let topo = kahn(&children, &parents).ok_or(GraphError::CycleDetected)?;
        Ok(Dag {
            children,
            parents,
            labels: None,
            topo,
            edge_count: edges.len(),
        })
    }

    /// Convenience constructor from plain `usize` pairs.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let edges: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (NodeId::from(u), NodeId::from(v)))
            .collect();
        Dag::new(node_count, &edges)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.node_count() {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                nodes: self.node_count(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::from)
    }

    /// Edges in ascending (source, target) order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(u, cs)| cs.iter().map(move |&c| (NodeId::from(u), c)))
    }

    #[inline]
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v.index()]
    }

    #[inline]
    pub fn parents(&self, v: NodeId) -> &[NodeId] {
        &self.parents[v.index()]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.children[u.index()].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The node's label, or its numeric id when the graph is unlabeled.
    pub fn label(&self, v: NodeId) -> String {
        match &self.labels {
            Some(l) => l[v.index()].clone(),
            None => v.to_string(),
        }
    }

    pub fn find_label(&self, name: &str) -> Option<NodeId> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == name)
            .map(NodeId::from)
    }

    /// Topological order, ties broken by ascending id.
    pub fn topo_order(&self) -> &[NodeId] {
        &self.topo
    }

    /// Copy of the graph with every edge into `v` removed (graph surgery for
    /// an atomic intervention).
    pub fn without_parents(&self, v: NodeId) -> Dag {
        let mut out = self.clone();
        for p in std::mem::take(&mut out.parents[v.index()]) {
            out.children[p.index()].retain(|&c| c != v);
            out.edge_count -= 1;
        }
        out
    }

    /// Reflexive ancestor set of `v`.
    pub fn ancestors(&self, v: NodeId) -> NodeSet {
        mask_to_set(&self.ancestor_mask(v))
    }

    /// Reflexive descendant set of `v`.
    pub fn descendants(&self, v: NodeId) -> NodeSet {
        mask_to_set(&self.descendant_mask(v))
    }

    pub fn proper_ancestors(&self, v: NodeId) -> NodeSet {
        let mut s = self.ancestors(v);
        s.remove(&v);
        s
    }

    pub fn ancestor_mask(&self, v: NodeId) -> Vec<bool> {
        self.reach(v, None, Direction::Up)
    }

    pub fn descendant_mask(&self, v: NodeId) -> Vec<bool> {
        self.reach(v, None, Direction::Down)
    }

    /// Nodes that reach `target` by a path not containing `avoid`.
    pub fn ancestor_mask_avoiding(&self, target: NodeId, avoid: NodeId) -> Vec<bool> {
        self.reach(target, Some(avoid), Direction::Up)
    }

    /// Nodes reachable from `source` by a path not containing `avoid`.
    pub fn descendant_mask_avoiding(&self, source: NodeId, avoid: NodeId) -> Vec<bool> {
        self.reach(source, Some(avoid), Direction::Down)
    }

    fn reach(&self, start: NodeId, avoid: Option<NodeId>, dir: Direction) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        if Some(start) == avoid {
            return seen;
        }
        seen[start.index()] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let next = match dir {
                Direction::Up => self.parents(u),
                Direction::Down => self.children(u),
            };
            for &w in next {
                if Some(w) != avoid && !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Common ancestors `An(x) ∩ An(y)`.
    pub fn common_ancestors(&self, x: NodeId, y: NodeId) -> NodeSet {
        let ax = self.ancestor_mask(x);
        let ay = self.ancestor_mask(y);
        self.nodes()
            .filter(|v| ax[v.index()] && ay[v.index()])
            .collect()
    }

    /// Lowest common ancestors: members of `CA(x, y)` from which no other
    /// common ancestor is reachable.
    pub fn lca(&self, x: NodeId, y: NodeId) -> NodeSet {
        let ax = self.ancestor_mask(x);
        let ay = self.ancestor_mask(y);
        let ca: Vec<bool> = ax.iter().zip(&ay).map(|(a, b)| *a && *b).collect();
        self.lowest_of(&ca)
    }

    /// Strict common ancestors: nodes with a path to `x` avoiding `y` and a
    /// path to `y` avoiding `x`.
    pub fn sca(&self, x: NodeId, y: NodeId) -> NodeSet {
        mask_to_set(&self.sca_mask(x, y))
    }

    fn sca_mask(&self, x: NodeId, y: NodeId) -> Vec<bool> {
        if x == y {
            return vec![false; self.node_count()];
        }
        let to_x = self.ancestor_mask_avoiding(x, y);
        let to_y = self.ancestor_mask_avoiding(y, x);
        to_x.iter().zip(&to_y).map(|(a, b)| *a && *b).collect()
    }

    /// Lowest strict common ancestors of a pair.
    pub fn lsca_pair(&self, x: NodeId, y: NodeId) -> NodeSet {
        self.lowest_of(&self.sca_mask(x, y))
    }

    /// Union of `lsca_pair` over all unordered pairs of `set`, excluding
    /// `set` itself.
    pub fn lsca_set(&self, set: &NodeSet) -> NodeSet {
        let members: Vec<NodeId> = set.iter().copied().collect();
        let mut out = NodeSet::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                out.extend(
                    self.lsca_pair(a, b)
                        .into_iter()
                        .filter(|v| !set.contains(v)),
                );
            }
        }
        out
    }

    /// Members of `candidates` from which no other candidate is reachable by
    /// a non-trivial path. One reverse-topological sweep.
    fn lowest_of(&self, candidates: &[bool]) -> NodeSet {
        let mut below = vec![false; self.node_count()];
        let mut out = NodeSet::new();
        for &v in self.topo.iter().rev() {
            let hit = self
                .children(v)
                .iter()
                .any(|c| candidates[c.index()] || below[c.index()]);
            below[v.index()] = hit;
            if candidates[v.index()] && !hit {
                out.insert(v);
            }
        }
        out
    }
}

#[derive(Copy, Clone)]
enum Direction {
    Up,
    Down,
}

fn kahn(children: &[Vec<NodeId>], parents: &[Vec<NodeId>]) -> Option<Vec<NodeId>> {
    let n = children.len();
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<NodeId>> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(|v| Reverse(NodeId::from(v)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &c in &children[u.index()] {
            indeg[c.index()] -= 1;
            if indeg[c.index()] == 0 {
                ready.push(Reverse(c));
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub(crate) fn mask_to_set(mask: &[bool]) -> NodeSet {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| NodeId::from(i))
        .collect()
}

/// Builds a set from raw indices. Mostly for tests and fixtures.
pub fn node_set<I: IntoIterator<Item = usize>>(ids: I) -> NodeSet {
    ids.into_iter().map(NodeId::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Dag {
        Dag::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn diamond() -> Dag {
        Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Dag::from_edges(2, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::CycleDetected
        );
        assert_eq!(
            Dag::from_edges(2, &[(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(NodeId(0), NodeId(1))
        );
        assert_eq!(
            Dag::from_edges(2, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(NodeId(1))
        );
        assert!(matches!(
            Dag::from_edges(2, &[(0, 2)]),
            Err(GraphError::NodeOutOfRange(..))
        ));
    }

    #[test]
    fn adjacency_is_consistent() {
        let d = diamond();
        assert_eq!(d.children(NodeId(0)), &[NodeId(1), NodeId(2)]);
        assert_eq!(d.parents(NodeId(3)), &[NodeId(1), NodeId(2)]);
        assert_eq!(d.edge_count(), 4);
        assert_eq!(d.edges().count(), 4);
    }

    #[test]
    fn topo_orders() {
        let ids = |d: &Dag| d.topo_order().iter().map(|v| v.0).collect::<Vec<_>>();
        assert_eq!(ids(&chain()), vec![0, 1, 2]);
        assert_eq!(ids(&diamond()), vec![0, 1, 2, 3]);
        assert_eq!(ids(&Dag::from_edges(3, &[]).unwrap()), vec![0, 1, 2]);
        // ties are broken by id even when the id order is not topological
        let d = Dag::from_edges(3, &[(2, 0)]).unwrap();
        assert_eq!(ids(&d), vec![1, 2, 0]);
    }

    #[test]
    fn ancestors_and_descendants() {
        let c = chain();
        assert_eq!(c.ancestors(NodeId(2)), node_set([0, 1, 2]));
        assert_eq!(c.descendants(NodeId(1)), node_set([1, 2]));
        let e = Dag::from_edges(3, &[]).unwrap();
        assert_eq!(e.ancestors(NodeId(0)), node_set([0]));
    }

    #[test]
    fn lca_on_diamond() {
        assert_eq!(diamond().lca(NodeId(1), NodeId(2)), node_set([0]));
        let e = Dag::from_edges(2, &[]).unwrap();
        assert!(e.lca(NodeId(0), NodeId(1)).is_empty());
    }

    #[test]
    fn sca_examples() {
        assert_eq!(diamond().sca(NodeId(1), NodeId(2)), node_set([0]));
        // every path from 0 to 2 passes through 1
        assert!(chain().sca(NodeId(1), NodeId(2)).is_empty());
        let d = Dag::from_edges(4, &[(0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        assert_eq!(d.sca(NodeId(2), NodeId(3)), node_set([0, 1]));
    }

    #[test]
    fn lsca_examples() {
        assert_eq!(diamond().lsca_pair(NodeId(1), NodeId(2)), node_set([0]));
        let d = Dag::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4)]).unwrap();
        assert_eq!(d.sca(NodeId(3), NodeId(4)), node_set([0, 1]));
        assert_eq!(d.lsca_pair(NodeId(3), NodeId(4)), node_set([1]));
        let e = Dag::from_edges(2, &[]).unwrap();
        assert!(e.lsca_pair(NodeId(0), NodeId(1)).is_empty());
        assert_eq!(diamond().lsca_set(&node_set([1, 2])), node_set([0]));
        assert!(diamond().lsca_set(&node_set([1])).is_empty());
    }

    #[test]
    fn surgery_removes_incoming_edges_only() {
        let d = diamond().without_parents(NodeId(3));
        assert!(d.parents(NodeId(3)).is_empty());
        assert_eq!(d.children(NodeId(0)), &[NodeId(1), NodeId(2)]);
        assert_eq!(d.edge_count(), 2);
    }

    #[test]
    fn path_validity() {
        let d = diamond();
        assert!(Path(vec![NodeId(0), NodeId(1), NodeId(3)]).is_valid_in(&d));
        assert!(Path(vec![NodeId(2)]).is_valid_in(&d));
        assert!(!Path(vec![NodeId(0), NodeId(3)]).is_valid_in(&d));
        assert!(!Path(vec![]).is_valid_in(&d));
    }
}
