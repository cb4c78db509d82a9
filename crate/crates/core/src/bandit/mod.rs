//! Two-level conditional bandit: UCB1 over arm nodes, and for the chosen
//! node a UCB1 over its values kept separately for every realized context of
//! its proper ancestors.

mod regret;

pub use regret::{
    aggregate, estimated_best_arm, estimated_regret, oracle_regret, write_aggregate_csv,
    write_history_csv, ArmOracle, RegretCurve,
};

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::closure::mgiss;
use crate::graph::{NodeId, NodeSet};
use crate::scm::{Scm, ScmError, UnitSampler, Value};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BanditError {
    #[error("the arm set is empty")]
    EmptyArmSet,
    #[error("horizon {horizon} is shorter than the {arms} arms")]
    HorizonTooSmall { horizon: usize, arms: usize },
    #[error("node {0} cannot be an arm")]
    InvalidArm(NodeId),
    #[error(transparent)]
    Scm(#[from] ScmError),
}

/// Which nodes the agent may intervene on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmSelection {
    /// Every proper ancestor of the target.
    All,
    /// The minimal globally interventionally superior set.
    Mgiss,
}

impl ArmSelection {
    pub fn arms(self, scm: &Scm, y: NodeId) -> NodeSet {
        match self {
            ArmSelection::All => scm.dag().proper_ancestors(y),
            ArmSelection::Mgiss => mgiss(scm.dag(), y),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ArmStats {
    pub pulls: u64,
    pub mean_reward: f64,
}

impl ArmStats {
    pub fn update(&mut self, reward: f64) {
        self.pulls += 1;
        self.mean_reward += (reward - self.mean_reward) / self.pulls as f64;
    }
}

/// Index of the arm to play: the first unplayed arm, else the highest UCB1
/// score `mean + c * sqrt(2 ln t / pulls)`, lowest index on ties.
pub fn ucb1_choice(stats: &[ArmStats], t: u64, c: f64) -> usize {
    if let Some(i) = stats.iter().position(|s| s.pulls == 0) {
        return i;
    }
    let log_t = (t.max(1) as f64).ln();
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (i, s) in stats.iter().enumerate() {
        let score = s.mean_reward + c * (2.0 * log_t / s.pulls as f64).sqrt();
        if score > best_score {
            best = i;
            best_score = score;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BanditConfig {
    pub horizon: usize,
    pub seed: u64,
    /// UCB1 exploration constant, used at both levels.
    pub exploration: f64,
}

impl BanditConfig {
    pub fn new(horizon: usize, seed: u64) -> Self {
        BanditConfig {
            horizon,
            seed,
            exploration: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Round {
    /// 1-based.
    pub round: usize,
    pub node: NodeId,
    /// Contexts of a node are numbered in order of first observation.
    pub context_id: usize,
    pub value: Value,
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BanditHistory {
    /// Arm nodes in ascending order.
    pub arms: Vec<NodeId>,
    pub rounds: Vec<Round>,
    /// Final node-level statistics, aligned with `arms`.
    pub node_stats: Vec<ArmStats>,
}

impl BanditHistory {
    pub fn pulls_of(&self, node: NodeId) -> u64 {
        self.arms
            .iter()
            .position(|&a| a == node)
            .map_or(0, |i| self.node_stats[i].pulls)
    }
}

struct ArmState {
    node: NodeId,
    context: Vec<NodeId>,
    contexts: HashMap<Vec<Value>, usize>,
    tables: Vec<Vec<ArmStats>>,
}

/// Plays `horizon` rounds. Each round samples one unit, which fixes both the
/// context the agent observes and the reward of the chosen intervention.
pub fn run_cond_int_ucb(
    scm: &Scm,
    y: NodeId,
    arms: &NodeSet,
    config: &BanditConfig,
) -> Result<BanditHistory, BanditError> {
    if arms.is_empty() {
        return Err(BanditError::EmptyArmSet);
    }
    if let Some(&bad) = arms
        .iter()
        .find(|a| **a == y || a.index() >= scm.node_count())
    {
        return Err(BanditError::InvalidArm(bad));
    }
    if y.index() >= scm.node_count() {
        return Err(BanditError::InvalidArm(y));
    }
    if config.horizon < arms.len() {
        return Err(BanditError::HorizonTooSmall {
            horizon: config.horizon,
            arms: arms.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sampler = UnitSampler::new(scm);
    let mut states: Vec<ArmState> = arms
        .iter()
        .map(|&node| ArmState {
            node,
            context: scm.dag().proper_ancestors(node).into_iter().collect(),
            contexts: HashMap::new(),
            tables: Vec::new(),
        })
        .collect();
    let mut node_stats = vec![ArmStats::default(); states.len()];
    let mut rounds = Vec::with_capacity(config.horizon);

    for t in 1..=config.horizon {
        let arm = ucb1_choice(&node_stats, t as u64, config.exploration);
        let unit = sampler.sample(&mut rng);
        let observed = scm.evaluate(&unit);
        let state = &mut states[arm];
        let key: Vec<Value> = state.context.iter().map(|&z| observed.get(z)).collect();
        let next_id = state.tables.len();
        let context_id = *state.contexts.entry(key).or_insert(next_id);
        if context_id == next_id {
            state
                .tables
                .push(vec![ArmStats::default(); scm.range(state.node) as usize]);
        }
        let table = &mut state.tables[context_id];
        let seen: u64 = table.iter().map(|s| s.pulls).sum();
        let value = ucb1_choice(table, seen + 1, config.exploration) as Value;
        let reward = scm.evaluate_forced(&unit, state.node, value).get(y) as f64;
        table[value as usize].update(reward);
        node_stats[arm].update(reward);
        rounds.push(Round {
            round: t,
            node: state.node,
            context_id,
            value,
            reward,
        });
    }

    Ok(BanditHistory {
        arms: arms.iter().copied().collect(),
        rounds,
        node_stats,
    })
}

/// Independent runs for each seed, in parallel; output follows `seeds`.
pub fn run_many(
    scm: &Scm,
    y: NodeId,
    arms: &NodeSet,
    horizon: usize,
    seeds: &[u64],
) -> Result<Vec<BanditHistory>, BanditError> {
    seeds
        .par_iter()
        .map(|&seed| run_cond_int_ucb(scm, y, arms, &BanditConfig::new(horizon, seed)))
        .collect()
}
