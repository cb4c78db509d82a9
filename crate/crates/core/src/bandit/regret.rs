//! Regret accounting, run aggregation and CSV output.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::{BanditError, BanditHistory};
use crate::graph::{NodeId, NodeSet};
use crate::scm::{optimal_node_value, Scm};

/// Exact value of every arm, for regret against the true best node.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmOracle {
    values: BTreeMap<NodeId, f64>,
    best: f64,
}

impl ArmOracle {
    pub fn new(scm: &Scm, y: NodeId, arms: &NodeSet, budget: u64) -> Result<Self, BanditError> {
        if arms.is_empty() {
            return Err(BanditError::EmptyArmSet);
        }
        let values = arms
            .iter()
            .map(|&a| Ok((a, optimal_node_value(scm, y, a, budget)?)))
            .collect::<Result<BTreeMap<_, _>, BanditError>>()?;
        let best = values.values().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(ArmOracle { values, best })
    }

    pub fn value(&self, node: NodeId) -> Option<f64> {
        self.values.get(&node).copied()
    }

    pub fn best_value(&self) -> f64 {
        self.best
    }

    /// Arms attaining the best value.
    pub fn optimal_arms(&self, tolerance: f64) -> NodeSet {
        self.values
            .iter()
            .filter(|(_, &v)| v >= self.best - tolerance)
            .map(|(&a, _)| a)
            .collect()
    }

    /// Cumulative `mu* - mu(pulled node)` after every round. Nodes outside
    /// the oracle's arm set count as value 0.
    pub fn regret(&self, history: &BanditHistory) -> Vec<f64> {
        let mut total = 0.0;
        history
            .rounds
            .iter()
            .map(|r| {
                total += self.best - self.value(r.node).unwrap_or(0.0);
                total
            })
            .collect()
    }
}

/// [`ArmOracle::regret`] with the oracle built over `arms`.
pub fn oracle_regret(
    history: &BanditHistory,
    scm: &Scm,
    y: NodeId,
    arms: &NodeSet,
    budget: u64,
) -> Result<Vec<f64>, BanditError> {
    Ok(ArmOracle::new(scm, y, arms, budget)?.regret(history))
}

fn run_best(h: &BanditHistory) -> Option<NodeId> {
    let mut best: Option<(NodeId, f64)> = None;
    for (&a, s) in h.arms.iter().zip(&h.node_stats) {
        if s.pulls > 0 && best.is_none_or(|(_, m)| s.mean_reward > m) {
            best = Some((a, s.mean_reward));
        }
    }
    best.map(|(a, _)| a)
}

/// The node most runs ended up rating highest (by final node-level mean),
/// lowest id on ties.
pub fn estimated_best_arm(histories: &[BanditHistory]) -> Option<NodeId> {
    let mut votes: BTreeMap<NodeId, usize> = BTreeMap::new();
    for h in histories {
        if let Some(a) = run_best(h) {
            *votes.entry(a).or_default() += 1;
        }
    }
    let top = *votes.values().max()?;
    votes.into_iter().find(|&(_, v)| v == top).map(|(a, _)| a)
}

/// Regret of `history` against the estimated best arm, with each node's
/// value estimated by its pooled final mean over all `histories`. Gaps can
/// be negative when estimates disagree with the majority vote.
pub fn estimated_regret(history: &BanditHistory, histories: &[BanditHistory]) -> Vec<f64> {
    let mut pooled: BTreeMap<NodeId, (f64, u64)> = BTreeMap::new();
    for h in histories {
        for (&a, s) in h.arms.iter().zip(&h.node_stats) {
            let e = pooled.entry(a).or_default();
            e.0 += s.mean_reward * s.pulls as f64;
            e.1 += s.pulls;
        }
    }
    let mean = |a: NodeId| {
        pooled
            .get(&a)
            .filter(|(_, n)| *n > 0)
            .map_or(0.0, |(s, n)| s / *n as f64)
    };
    let best = estimated_best_arm(histories).map_or(0.0, mean);
    let mut total = 0.0;
    history
        .rounds
        .iter()
        .map(|r| {
            total += best - mean(r.node);
            total
        })
        .collect()
}

/// Per-round mean and sample standard deviation over runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretCurve {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl RegretCurve {
    pub fn final_mean(&self) -> f64 {
        self.mean.last().copied().unwrap_or(0.0)
    }

    pub fn final_std(&self) -> f64 {
        self.std.last().copied().unwrap_or(0.0)
    }
}

/// Aggregates equally long curves. The standard deviation uses `k - 1` and
/// is 0 for a single run.
pub fn aggregate(curves: &[Vec<f64>]) -> RegretCurve {
    let len = curves.iter().map(Vec::len).min().unwrap_or(0);
    let k = curves.len() as f64;
    let mut mean = Vec::with_capacity(len);
    let mut std = Vec::with_capacity(len);
    for t in 0..len {
        let m = curves.iter().map(|c| c[t]).sum::<f64>() / k;
        let var = if curves.len() > 1 {
            curves.iter().map(|c| (c[t] - m).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        mean.push(m);
        std.push(var.sqrt());
    }
    RegretCurve { mean, std }
}

#[derive(Serialize)]
struct HistoryRow<'a> {
    round: usize,
    node: &'a str,
    context_id: usize,
    value: u32,
    reward: f64,
    cum_regret_oracle: Option<f64>,
}

/// One row per round; the regret column is empty without `regret`.
pub fn write_history_csv<W: Write>(
    out: W,
    scm: &Scm,
    history: &BanditHistory,
    regret: Option<&[f64]>,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for (i, r) in history.rounds.iter().enumerate() {
        let label = scm.dag().label(r.node);
        w.serialize(HistoryRow {
            round: r.round,
            node: &label,
            context_id: r.context_id,
            value: r.value,
            reward: r.reward,
            cum_regret_oracle: regret.map(|g| g[i]),
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_aggregate_csv<W: Write>(out: W, curve: &RegretCurve) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["round", "mean_regret", "std_regret"])?;
    for (t, (m, s)) in curve.mean.iter().zip(&curve.std).enumerate() {
        w.serialize((t + 1, m, s))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandit::{run_cond_int_ucb, ArmStats, BanditConfig, Round};
    use crate::graph::node_set;
    use crate::scm::{xor_counterexample, DEFAULT_BUDGET};

    fn fake(nodes: &[usize], arms: &[usize], means: &[f64]) -> BanditHistory {
        BanditHistory {
            arms: arms.iter().map(|&a| NodeId::from(a)).collect(),
            rounds: nodes
                .iter()
                .enumerate()
                .map(|(i, &n)| Round {
                    round: i + 1,
                    node: NodeId::from(n),
                    context_id: 0,
                    value: 0,
                    reward: 0.0,
                })
                .collect(),
            node_stats: means
                .iter()
                .map(|&m| ArmStats {
                    pulls: 1,
                    mean_reward: m,
                })
                .collect(),
        }
    }

    #[test]
    fn xor_oracle_values() {
        let m = xor_counterexample();
        let o = ArmOracle::new(&m, NodeId(3), &node_set([0, 1, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(o.best_value(), 1.0);
        assert_eq!(o.value(NodeId(1)), Some(0.5));
        assert_eq!(o.optimal_arms(1e-9), node_set([0, 2]));

        let w_only = fake(&[1; 10], &[0, 1, 2], &[0.0; 3]);
        assert_eq!(o.regret(&w_only).last(), Some(&5.0));
        let optimal = fake(&[0, 2, 0, 2], &[0, 1, 2], &[0.0; 3]);
        assert!(o.regret(&optimal).iter().all(|&r| r == 0.0));
        let mixed = fake(&[0, 1, 2, 1], &[0, 1, 2], &[0.0; 3]);
        assert_eq!(o.regret(&mixed), vec![0.0, 0.5, 0.5, 1.0]);
    }

    #[test]
    fn real_run_regret_is_monotone() {
        let m = xor_counterexample();
        let arms = node_set([0, 1, 2]);
        let h = run_cond_int_ucb(&m, NodeId(3), &arms, &BanditConfig::new(300, 2)).unwrap();
        let r = oracle_regret(&h, &m, NodeId(3), &arms, DEFAULT_BUDGET).unwrap();
        assert!(r.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn majority_vote() {
        let a = fake(&[], &[0, 1], &[1.0, 0.0]);
        let b = fake(&[], &[0, 1], &[0.0, 1.0]);
        assert_eq!(
            estimated_best_arm(&[a.clone(), a.clone(), a.clone()]),
            Some(NodeId(0))
        );
        // 60/40 in favour of node 1
        let split: Vec<_> = [&a, &b, &b, &a, &b, &b, &a, &b, &a, &b]
            .into_iter()
            .cloned()
            .collect();
        assert_eq!(estimated_best_arm(&split), Some(NodeId(1)));
        assert_eq!(estimated_best_arm(&[b.clone(), a.clone()]), Some(NodeId(0)));
        assert_eq!(estimated_best_arm(&[b.clone(), b, a]), Some(NodeId(1)));
        assert_eq!(estimated_best_arm(&[]), None);
    }

    #[test]
    fn estimated_regret_uses_pooled_means() {
        let a = fake(&[0, 1, 1], &[0, 1], &[1.0, 0.25]);
        let r = estimated_regret(&a, std::slice::from_ref(&a));
        assert_eq!(r, vec![0.0, 0.75, 1.5]);
    }

    #[test]
    fn aggregation() {
        let c = aggregate(&[vec![0.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(c.mean, vec![1.0, 3.0]);
        assert!((c.std[1] - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(aggregate(&[vec![1.0]]).std, vec![0.0]);
    }

    #[test]
    fn history_csv_columns() {
        let m = xor_counterexample();
        let arms = node_set([0, 2]);
        let h = run_cond_int_ucb(&m, NodeId(3), &arms, &BanditConfig::new(3, 2)).unwrap();
        let mut buf = Vec::new();
        write_history_csv(&mut buf, &m, &h, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next(),
            Some("round,node,context_id,value,reward,cum_regret_oracle")
        );
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(1).unwrap().starts_with("1,Z,0,"));
    }
}
