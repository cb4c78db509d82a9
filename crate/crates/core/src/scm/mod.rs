//! Discrete structural causal models.
//!
//! Every variable takes values `0..range`. Each node's structural assignment
//! is an explicit lookup table indexed row-major by the values of its parents
//! (in ascending id order) and then by its noise value, which varies fastest.
//! Noise variables have finite support `0..k` with explicit probabilities, so
//! every expectation here is an exact weighted enumeration over units.

mod query;
pub mod random;
pub mod spec_file;
mod witness;

pub use query::{
    det_superior, expectation, max_atomic, optimal_node_value, post_expectation, DEFAULT_BUDGET,
};
pub use witness::{witness_lambda, witness_parent, witness_path, xor_counterexample};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use thiserror::Error;

use crate::graph::{Dag, GraphError, NodeId};

pub type Value = u32;

const PROBABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScmError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} per-node entries, found {found}")]
    NodeCount { expected: usize, found: usize },
    #[error("node {0} has an empty value range")]
    EmptyRange(NodeId),
    #[error("noise distribution of node {node} sums to {sum}")]
    NoiseNotNormalized { node: NodeId, sum: f64 },
    #[error("noise distribution of node {0} has an invalid probability")]
    InvalidProbability(NodeId),
    #[error("assignment table of node {node} has {found} entries, expected {expected}")]
    TableSize {
        node: NodeId,
        expected: usize,
        found: usize,
    },
    #[error("value {value} is outside the range 0..{range} of node {node}")]
    ValueOutOfRange {
        node: NodeId,
        value: Value,
        range: u32,
    },
    #[error("policy for node {node} has {found} entries, expected {expected}")]
    IncompletePolicy {
        node: NodeId,
        expected: usize,
        found: usize,
    },
    #[error("invalid conditioning set for node {node}: {reason}")]
    InvalidConditioningSet { node: NodeId, reason: String },
    #[error("joint noise support has {units} units, budget is {budget}")]
    EnumerationBudgetExceeded { units: u128, budget: u64 },
    #[error("node {node} does not exist")]
    UnknownNode { node: NodeId },
    #[error("node {b} is not a parent of {y}")]
    NotAParent { b: NodeId, y: NodeId },
    #[error("invalid Λ-structure paths: {0}")]
    InvalidLambdaPaths(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// How a node obtains its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mechanism {
    /// Lookup table over (parent values, noise value).
    Table(Vec<Value>),
    /// A conditional-intervention policy over the realized values of the
    /// conditioning set; ignores parents and noise.
    Policy {
        conditioning: Vec<NodeId>,
        table: Vec<Value>,
    },
}

/// One realization of all noise variables, as per-node noise values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unit(pub Vec<Value>);

impl Unit {
    /// The all-zero unit.
    pub fn zeros(node_count: usize) -> Self {
        Unit(vec![0; node_count])
    }
}

/// Realized values of all endogenous variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<Value>);

impl Assignment {
    #[inline]
    pub fn get(&self, v: NodeId) -> Value {
        self.0[v.index()]
    }
}

/// Atomic `do(X = x)` or conditional `do(X = g(Z_X))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intervention {
    Atomic { node: NodeId, value: Value },
    Conditional(Policy),
}

impl Intervention {
    pub fn node(&self) -> NodeId {
        match self {
            Intervention::Atomic { node, .. } => *node,
            Intervention::Conditional(p) => p.node,
        }
    }
}

/// A policy `g: R_{Z_X} -> R_X`, tabulated row-major over `conditioning`
/// (ascending ids).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Policy {
    pub node: NodeId,
    pub conditioning: Vec<NodeId>,
    pub table: Vec<Value>,
}

impl Policy {
    /// Tabulates `g` over every context of `conditioning`.
    pub fn from_fn(
        scm: &Scm,
        node: NodeId,
        mut conditioning: Vec<NodeId>,
        g: impl Fn(&[Value]) -> Value,
    ) -> Policy {
        conditioning.sort_unstable();
        conditioning.dedup();
        let radices: Vec<u32> = conditioning.iter().map(|&z| scm.range(z)).collect();
        let table = MixedRadix::new(&radices).map(|ctx| g(&ctx)).collect();
        Policy {
            node,
            conditioning,
            table,
        }
    }
}

/// A discrete SCM. Immutable; [`Scm::apply`] returns a new model.
#[derive(Debug, Clone, PartialEq)]
pub struct Scm {
    dag: Dag,
    ranges: Vec<u32>,
    noise: Vec<Vec<f64>>,
    mechanisms: Vec<Mechanism>,
    order: Vec<NodeId>,
}

impl Scm {
    pub fn new(
        dag: Dag,
        ranges: Vec<u32>,
        noise: Vec<Vec<f64>>,
        tables: Vec<Vec<Value>>,
    ) -> Result<Scm, ScmError> {
        let n = dag.node_count();
        for found in [ranges.len(), noise.len(), tables.len()] {
            if found != n {
                return Err(ScmError::NodeCount { expected: n, found });
            }
        }
        for v in dag.nodes() {
            if ranges[v.index()] == 0 {
                return Err(ScmError::EmptyRange(v));
            }
            let dist = &noise[v.index()];
            if dist.is_empty() || dist.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(ScmError::InvalidProbability(v));
            }
            let sum: f64 = dist.iter().sum();
            if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
                return Err(ScmError::NoiseNotNormalized { node: v, sum });
            }
        }
        let mechanisms = tables.into_iter().map(Mechanism::Table).collect();
        let order = dag.topo_order().to_vec();
        let scm = Scm {
            dag,
            ranges,
            noise,
            mechanisms,
            order,
        };
        for v in scm.dag.nodes() {
            scm.check_table(v)?;
        }
        Ok(scm)
    }

    /// Builds every table by calling `f(node, parent_values, noise_value)`.
    pub fn from_fn(
        dag: Dag,
        ranges: Vec<u32>,
        noise: Vec<Vec<f64>>,
        f: impl Fn(NodeId, &[Value], Value) -> Value,
    ) -> Result<Scm, ScmError> {
        if ranges.len() != dag.node_count() || noise.len() != dag.node_count() {
            return Err(ScmError::NodeCount {
                expected: dag.node_count(),
                found: ranges.len().min(noise.len()),
            });
        }
        let tables = dag
            .nodes()
            .map(|v| {
                let radices: Vec<u32> = dag.parents(v).iter().map(|p| ranges[p.index()]).collect();
                let k = noise[v.index()].len() as Value;
                let mut table = Vec::new();
                for pa in MixedRadix::new(&radices) {
                    for e in 0..k {
                        table.push(f(v, &pa, e));
                    }
                }
                table
            })
            .collect();
        Scm::new(dag, ranges, noise, tables)
    }

    fn check_table(&self, v: NodeId) -> Result<(), ScmError> {
        let Mechanism::Table(table) = &self.mechanisms[v.index()] else {
            return Ok(());
        };
        let expected = self
            .dag
            .parents(v)
            .iter()
            .map(|p| self.ranges[p.index()] as usize)
            .product::<usize>()
            * self.noise[v.index()].len();
        if table.len() != expected {
            return Err(ScmError::TableSize {
                node: v,
                expected,
                found: table.len(),
            });
        }
        let range = self.ranges[v.index()];
        if let Some(&value) = table.iter().find(|&&x| x >= range) {
            return Err(ScmError::ValueOutOfRange {
                node: v,
                value,
                range,
            });
        }
        Ok(())
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn node_count(&self) -> usize {
        self.dag.node_count()
    }

    pub fn range(&self, v: NodeId) -> u32 {
        self.ranges[v.index()]
    }

    pub fn ranges(&self) -> &[u32] {
        &self.ranges
    }

    pub fn noise(&self, v: NodeId) -> &[f64] {
        &self.noise[v.index()]
    }

    pub fn mechanism(&self, v: NodeId) -> &Mechanism {
        &self.mechanisms[v.index()]
    }

    /// Nodes whose values feed `v`'s mechanism.
    pub fn inputs(&self, v: NodeId) -> &[NodeId] {
        match &self.mechanisms[v.index()] {
            Mechanism::Table(_) => self.dag.parents(v),
            Mechanism::Policy { conditioning, .. } => conditioning,
        }
    }

    /// Probability of a unit under the product noise distribution.
    pub fn unit_probability(&self, unit: &Unit) -> f64 {
        unit.0
            .iter()
            .enumerate()
            .map(|(v, &e)| self.noise[v].get(e as usize).copied().unwrap_or(0.0))
            .product()
    }

    pub fn unit_is_valid(&self, unit: &Unit) -> bool {
        unit.0.len() == self.node_count()
            && unit
                .0
                .iter()
                .zip(&self.noise)
                .all(|(&e, dist)| (e as usize) < dist.len())
    }

    #[inline]
    fn eval_node(&self, v: NodeId, values: &[Value], unit: &Unit) -> Value {
        match &self.mechanisms[v.index()] {
            Mechanism::Table(table) => {
                let row = row_index(self.dag.parents(v), values, &self.ranges);
                table[row * self.noise[v.index()].len() + unit.0[v.index()] as usize]
            }
            Mechanism::Policy {
                conditioning,
                table,
            } => table[row_index(conditioning, values, &self.ranges)],
        }
    }

    /// All endogenous values at `unit`, evaluated in topological order.
    ///
    /// Panics if `unit` does not match the model (see [`Scm::unit_is_valid`]).
    pub fn evaluate(&self, unit: &Unit) -> Assignment {
        let mut values = vec![0; self.node_count()];
        for &v in &self.order {
            values[v.index()] = self.eval_node(v, &values, unit);
        }
        Assignment(values)
    }

    /// Evaluates with `node` held at `value`, which is the post-intervention
    /// world of `do(node = value)` without building a new model.
    pub fn evaluate_forced(&self, unit: &Unit, node: NodeId, value: Value) -> Assignment {
        let mut values = vec![0; self.node_count()];
        for &v in &self.order {
            values[v.index()] = if v == node {
                value
            } else {
                self.eval_node(v, &values, unit)
            };
        }
        Assignment(values)
    }

    /// Unrolled assignment of `v`: its value as a function of the unit alone.
    pub fn unrolled(&self, v: NodeId, unit: &Unit) -> Value {
        self.evaluate(unit).get(v)
    }

    /// Mask of nodes whose mechanism depends, transitively, on `source`
    /// (reflexive).
    pub fn dependents_mask(&self, source: NodeId) -> Vec<bool> {
        let mut mark = vec![false; self.node_count()];
        mark[source.index()] = true;
        for &v in &self.order {
            if v != source && self.inputs(v).iter().any(|i| mark[i.index()]) {
                mark[v.index()] = true;
            }
        }
        mark
    }

    /// Unrolled assignment of `target` blocked by `block`: dependence routed
    /// through `block` is cut and `block` takes `block_value`. Computed by
    /// recursion over mechanism inputs, independently of [`Scm::apply`].
    pub fn blocked_unrolled(
        &self,
        target: NodeId,
        block: NodeId,
        block_value: Value,
        unit: &Unit,
    ) -> Value {
        let observed = self.evaluate(unit);
        let downstream = self.dependents_mask(block);
        let mut memo: Vec<Option<Value>> = vec![None; self.node_count()];
        self.blocked_rec(
            target,
            block,
            block_value,
            unit,
            &observed,
            &downstream,
            &mut memo,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn blocked_rec(
        &self,
        x: NodeId,
        block: NodeId,
        block_value: Value,
        unit: &Unit,
        observed: &Assignment,
        downstream: &[bool],
        memo: &mut [Option<Value>],
    ) -> Value {
        if !downstream[x.index()] {
            return observed.get(x);
        }
        if x == block {
            return block_value;
        }
        if let Some(v) = memo[x.index()] {
            return v;
        }
        let mut values = vec![0; self.node_count()];
        for &i in self.inputs(x) {
            values[i.index()] =
                self.blocked_rec(i, block, block_value, unit, observed, downstream, memo);
        }
        let out = self.eval_node(x, &values, unit);
        memo[x.index()] = Some(out);
        out
    }

    /// Applies an intervention, returning the post-intervention model.
    ///
    /// Atomic interventions replace the node's table by a constant and drop
    /// its incoming edges. Conditional interventions install a policy that
    /// reads the realized conditioning values during evaluation.
    pub fn apply(&self, iv: &Intervention) -> Result<Scm, ScmError> {
        let node = iv.node();
        if node.index() >= self.node_count() {
            return Err(ScmError::UnknownNode { node });
        }
        let range = self.range(node);
        match iv {
            Intervention::Atomic { value, .. } => {
                if *value >= range {
                    return Err(ScmError::ValueOutOfRange {
                        node,
                        value: *value,
                        range,
                    });
                }
                let mut out = self.clone();
                out.dag = self.dag.without_parents(node);
                out.mechanisms[node.index()] =
                    Mechanism::Table(vec![*value; self.noise[node.index()].len()]);
                out.order = evaluation_order(&out.dag, &out.mechanisms)
                    .expect("removing edges keeps the evaluation graph acyclic");
                Ok(out)
            }
            Intervention::Conditional(policy) => {
                self.check_policy(policy)?;
                let mut out = self.clone();
                out.mechanisms[node.index()] = Mechanism::Policy {
                    conditioning: policy.conditioning.clone(),
                    table: policy.table.clone(),
                };
                out.order = evaluation_order(&out.dag, &out.mechanisms).ok_or_else(|| {
                    ScmError::InvalidConditioningSet {
                        node,
                        reason: "policy inputs form a cycle".into(),
                    }
                })?;
                Ok(out)
            }
        }
    }

    fn check_policy(&self, policy: &Policy) -> Result<(), ScmError> {
        let node = policy.node;
        let bad = |reason: &str| ScmError::InvalidConditioningSet {
            node,
            reason: reason.to_string(),
        };
        let z = &policy.conditioning;
        if z.iter().any(|v| v.index() >= self.node_count()) {
            return Err(bad("unknown node"));
        }
        if z.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("conditioning set must be strictly ascending"));
        }
        let downstream = self.dependents_mask(node);
        if z.iter().any(|v| downstream[v.index()]) {
            return Err(bad("contains the node or one of its descendants"));
        }
        if self
            .dag
            .proper_ancestors(node)
            .iter()
            .any(|a| z.binary_search(a).is_err())
        {
            return Err(bad("misses a proper ancestor"));
        }
        let expected: usize = z.iter().map(|&v| self.range(v) as usize).product();
        if policy.table.len() != expected {
            return Err(ScmError::IncompletePolicy {
                node,
                expected,
                found: policy.table.len(),
            });
        }
        let range = self.range(node);
        if let Some(&value) = policy.table.iter().find(|&&x| x >= range) {
            return Err(ScmError::ValueOutOfRange { node, value, range });
        }
        Ok(())
    }

    /// Size of the joint noise support.
    pub fn unit_count(&self) -> u128 {
        self.noise
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128))
    }

    /// Calls `f(unit, probability)` for every unit of positive probability.
    pub fn for_each_unit(
        &self,
        budget: u64,
        mut f: impl FnMut(&Unit, f64),
    ) -> Result<(), ScmError> {
        let units = self.unit_count();
        if units > budget as u128 {
            return Err(ScmError::EnumerationBudgetExceeded { units, budget });
        }
        let radices: Vec<u32> = self.noise.iter().map(|d| d.len() as u32).collect();
        for digits in MixedRadix::new(&radices) {
            let unit = Unit(digits);
            let p = self.unit_probability(&unit);
            if p > 0.0 {
                f(&unit, p);
            }
        }
        Ok(())
    }

    /// Draws one world: independent noise per node, then evaluation.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Assignment {
        let unit = UnitSampler::new(self).sample(rng);
        self.evaluate(&unit)
    }
}

/// Reusable per-node noise samplers.
#[derive(Debug, Clone)]
pub struct UnitSampler {
    dists: Vec<WeightedIndex<f64>>,
}

impl UnitSampler {
    pub fn new(scm: &Scm) -> Self {
        let dists = scm
            .noise
            .iter()
            .map(|d| WeightedIndex::new(d.iter().copied()).expect("validated distribution"))
            .collect();
        UnitSampler { dists }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Unit {
        Unit(self.dists.iter().map(|d| d.sample(rng) as Value).collect())
    }
}

/// Row-major index of `values[nodes]` with per-node radices `ranges`.
#[inline]
pub(crate) fn row_index(nodes: &[NodeId], values: &[Value], ranges: &[u32]) -> usize {
    nodes.iter().fold(0usize, |acc, v| {
        acc * ranges[v.index()] as usize + values[v.index()] as usize
    })
}

fn evaluation_order(dag: &Dag, mechanisms: &[Mechanism]) -> Option<Vec<NodeId>> {
    let mut edges: Vec<(NodeId, NodeId)> = dag.edges().collect();
    for (v, m) in mechanisms.iter().enumerate() {
        if let Mechanism::Policy { conditioning, .. } = m {
            let v = NodeId::from(v);
            edges.extend(
                conditioning
                    .iter()
                    .filter(|z| !dag.has_edge(**z, v))
                    .map(|&z| (z, v)),
            );
        }
    }
    Dag::new(dag.node_count(), &edges)
        .ok()
        .map(|g| g.topo_order().to_vec())
}

/// Row-major enumeration of all digit vectors for the given radices; the last
/// digit varies fastest. Zero radices yield nothing; no radices yield one
/// empty vector.
#[derive(Debug, Clone)]
pub struct MixedRadix {
    radices: Vec<u32>,
    next: Option<Vec<Value>>,
}

impl MixedRadix {
    pub fn new(radices: &[u32]) -> Self {
        let next = (!radices.contains(&0)).then(|| vec![0; radices.len()]);
        MixedRadix {
            radices: radices.to_vec(),
            next,
        }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<Value>;

    fn next(&mut self) -> Option<Vec<Value>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.radices[i] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn n(i: usize) -> NodeId {
        NodeId::from(i)
    }

    #[test]
    fn mixed_radix_order() {
        let all: Vec<_> = MixedRadix::new(&[2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
        assert_eq!(MixedRadix::new(&[]).count(), 1);
        assert_eq!(MixedRadix::new(&[2, 0]).count(), 0);
    }

    #[test]
    fn xor_unrolled_values() {
        let m = xor_counterexample();
        // Z, W, A, Y with n_Z = 1, n_W = 0
        let unit = Unit(vec![1, 0, 0, 0]);
        assert_eq!(m.unrolled(n(2), &unit), 1);
        assert_eq!(m.unrolled(n(3), &unit), 1);
    }

    #[test]
    fn root_identity_and_constant_nodes() {
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let m = Scm::from_fn(
            dag,
            vec![3, 2],
            vec![vec![0.2, 0.3, 0.5], vec![1.0]],
            |v, _, e| {
                if v.index() == 0 {
                    e
                } else {
                    1
                }
            },
        )
        .unwrap();
        for e in 0..3 {
            let unit = Unit(vec![e, 0]);
            assert_eq!(m.unrolled(n(0), &unit), e);
            assert_eq!(m.unrolled(n(1), &unit), 1);
        }
    }

    #[test]
    fn blocked_cases() {
        let m = xor_counterexample();
        let unit = Unit(vec![1, 1, 0, 0]);
        // Y = A xor W with A blocked at 0 and W = 1
        assert_eq!(m.blocked_unrolled(n(3), n(2), 0, &unit), 1);
        // target = block
        assert_eq!(m.blocked_unrolled(n(2), n(2), 1, &unit), 1);
        // target not downstream of block
        assert_eq!(
            m.blocked_unrolled(n(1), n(2), 0, &unit),
            m.unrolled(n(1), &unit)
        );
    }

    #[test]
    fn atomic_apply() {
        let m = xor_counterexample();
        let post = m
            .apply(&Intervention::Atomic {
                node: n(2),
                value: 1,
            })
            .unwrap();
        assert!(post.dag().parents(n(2)).is_empty());
        m.for_each_unit(DEFAULT_BUDGET, |u, _| assert_eq!(post.unrolled(n(2), u), 1))
            .unwrap();
        assert!(matches!(
            m.apply(&Intervention::Atomic {
                node: n(2),
                value: 2
            }),
            Err(ScmError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn conditional_apply_validation() {
        let m = xor_counterexample();
        // A's proper ancestors are Z and W
        let short = Policy {
            node: n(2),
            conditioning: vec![n(0), n(1)],
            table: vec![0, 1, 1],
        };
        assert!(matches!(
            m.apply(&Intervention::Conditional(short)),
            Err(ScmError::IncompletePolicy { .. })
        ));
        let missing = Policy {
            node: n(2),
            conditioning: vec![n(1)],
            table: vec![0, 1],
        };
        assert!(matches!(
            m.apply(&Intervention::Conditional(missing)),
            Err(ScmError::InvalidConditioningSet { .. })
        ));
        let descendant = Policy {
            node: n(2),
            conditioning: vec![n(0), n(1), n(3)],
            table: vec![0; 8],
        };
        assert!(matches!(
            m.apply(&Intervention::Conditional(descendant)),
            Err(ScmError::InvalidConditioningSet { .. })
        ));
    }

    #[test]
    fn conditioning_on_later_non_descendant() {
        // 0 -> 1, 2 isolated: policy on 1 may read 2 even though 2 comes later
        let dag = Dag::from_edges(3, &[(0, 1)]).unwrap();
        let m = Scm::from_fn(dag, vec![2, 2, 2], vec![vec![0.5, 0.5]; 3], |_, _, e| e).unwrap();
        let p = Policy::from_fn(&m, n(1), vec![n(0), n(2)], |ctx| ctx[1]);
        let post = m.apply(&Intervention::Conditional(p)).unwrap();
        for e in MixedRadix::new(&[2, 2, 2]) {
            let unit = Unit(e.clone());
            assert_eq!(post.unrolled(n(1), &unit), e[2]);
        }
    }

    #[test]
    fn construction_errors() {
        let dag = Dag::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            Scm::new(
                dag.clone(),
                vec![2, 2],
                vec![vec![0.5, 0.4], vec![1.0]],
                vec![vec![0, 1], vec![0, 1]]
            ),
            Err(ScmError::NoiseNotNormalized { .. })
        ));
        assert!(matches!(
            Scm::new(
                dag.clone(),
                vec![2, 2],
                vec![vec![1.0], vec![1.0]],
                vec![vec![0], vec![0]]
            ),
            Err(ScmError::TableSize { .. })
        ));
        assert!(matches!(
            Scm::new(
                dag,
                vec![2, 2],
                vec![vec![1.0], vec![1.0]],
                vec![vec![0], vec![0, 2]]
            ),
            Err(ScmError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn point_mass_sampling_is_deterministic() {
        let dag = Dag::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = Scm::from_fn(
            dag,
            vec![2, 2, 2],
            vec![vec![0.0, 1.0], vec![1.0], vec![1.0]],
            |_, pa, e| pa.first().copied().unwrap_or(e),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert_eq!(m.sample(&mut rng), m.evaluate(&Unit(vec![1, 0, 0])));
        }
    }

    #[test]
    fn xor_sample_mean() {
        let m = xor_counterexample();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sampler = UnitSampler::new(&m);
        let draws = 100_000;
        let total: u64 = (0..draws)
            .map(|_| m.evaluate(&sampler.sample(&mut rng)).get(n(3)) as u64)
            .sum();
        let mean = total as f64 / draws as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn fixed_seed_repeats() {
        let m = xor_counterexample();
        let a = m.sample(&mut ChaCha8Rng::seed_from_u64(5));
        let b = m.sample(&mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let m = xor_counterexample();
        assert!(matches!(
            m.for_each_unit(3, |_, _| {}),
            Err(ScmError::EnumerationBudgetExceeded {
                units: 4,
                budget: 3
            })
        ));
    }
}
