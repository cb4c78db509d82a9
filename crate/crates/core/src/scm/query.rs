//! Exact expectations and superiority checks by unit enumeration.

use std::collections::HashMap;

use super::{row_index, Intervention, Scm, ScmError, Unit, Value};
use crate::graph::NodeId;

/// Largest joint noise support enumerated before giving up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Observational `E[y]`.
pub fn expectation(scm: &Scm, y: NodeId, budget: u64) -> Result<f64, ScmError> {
    let mut total = 0.0;
    scm.for_each_unit(budget, |unit, p| {
        total += p * scm.evaluate(unit).get(y) as f64;
    })?;
    Ok(total)
}

/// `E[y]` after applying `iv`.
pub fn post_expectation(
    scm: &Scm,
    y: NodeId,
    iv: &Intervention,
    budget: u64,
) -> Result<f64, ScmError> {
    expectation(&scm.apply(iv)?, y, budget)
}

/// `max_v y(do(x = v))` at one unit.
pub fn max_atomic(scm: &Scm, unit: &Unit, x: NodeId, y: NodeId) -> Value {
    (0..scm.range(x))
        .map(|v| scm.evaluate_forced(unit, x, v).get(y))
        .max()
        .expect("ranges are non-empty")
}

/// Whether intervening on `x` can do at least as well for `y` as intervening
/// on `w`, at this unit.
pub fn det_superior(scm: &Scm, unit: &Unit, x: NodeId, w: NodeId, y: NodeId) -> bool {
    max_atomic(scm, unit, x, y) >= max_atomic(scm, unit, w, y)
}

/// Value of the best conditional intervention on `x` over the conditioning
/// set `An(x) \ {x}`: for each realized context, the best atomic value.
pub fn optimal_node_value(scm: &Scm, y: NodeId, x: NodeId, budget: u64) -> Result<f64, ScmError> {
    let context: Vec<NodeId> = scm.dag().proper_ancestors(x).into_iter().collect();
    let k = scm.range(x) as usize;
    let mut by_context: HashMap<usize, Vec<f64>> = HashMap::new();
    scm.for_each_unit(budget, |unit, p| {
        let observed = scm.evaluate(unit);
        let ctx = row_index(&context, &observed.0, scm.ranges());
        let acc = by_context.entry(ctx).or_insert_with(|| vec![0.0; k]);
        for (v, slot) in acc.iter_mut().enumerate() {
            *slot += p * scm.evaluate_forced(unit, x, v as Value).get(y) as f64;
        }
    })?;
    let mut keys: Vec<usize> = by_context.keys().copied().collect();
    keys.sort_unstable();
    Ok(keys
        .iter()
        .map(|c| {
            by_context[c]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum())
}
