//! Checkers for the structural lemmas. Each returns the number of
//! elementary comparisons made, or a description of the first violation.

use mgiss::closure::{find_lambda_structure, mgiss, mgiss_with_connectors};
use mgiss::scm::random::{random_scm, RandomScmConfig};
use mgiss::scm::{
    det_superior, max_atomic, witness_lambda, witness_parent, Intervention, Policy, Scm, Unit,
    Value,
};
use mgiss::{Dag, NodeId, NodeSet};
use rand::Rng;

use super::{has_path, has_path_avoiding, random_dag};

const BUDGET: u64 = 1_000_000;

pub type Check = Result<usize, String>;

/// Random model on at most 6 nodes, ranges and noise supports at most 3.
pub fn small_scm<R: Rng>(rng: &mut R) -> Scm {
    let n = rng.random_range(1..=6);
    let p = rng.random_range(0.2..0.8);
    let dag = random_dag(rng, n, p);
    random_scm(&dag, RandomScmConfig::default(), rng)
}

pub fn units(scm: &Scm) -> Vec<Unit> {
    let mut out = Vec::new();
    scm.for_each_unit(BUDGET, |u, _| out.push(u.clone()))
        .expect("small model");
    out
}

pub fn blocking_vs_intervening(scm: &Scm) -> Check {
    let us = units(scm);
    let mut cases = 0;
    for x in scm.dag().nodes() {
        for v in 0..scm.range(x) {
            let post = scm
                .apply(&Intervention::Atomic { node: x, value: v })
                .map_err(|e| e.to_string())?;
            for u in &us {
                let after = post.evaluate(u);
                for y in scm.dag().nodes() {
                    let blocked = scm.blocked_unrolled(y, x, v, u);
                    if blocked != after.get(y) {
                        return Err(format!(
                            "{scm:?}: blocked {y:?} at {x:?}={v} on {u:?} is {blocked}, do gives {}",
                            after.get(y)
                        ));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn hashed_policy(salt: u64, range: u32) -> impl Fn(&[Value]) -> Value {
    move |ctx| {
        let mut h = salt;
        for &c in ctx {
            h = h
                .wrapping_add(c as u64 + 1)
                .wrapping_mul(0x9e37_79b9_7f4a_7c15);
            h ^= h >> 29;
        }
        (h % range as u64) as Value
    }
}

pub fn conditional_as_atomic<R: Rng>(scm: &Scm, rng: &mut R) -> Check {
    let dag = scm.dag();
    let n = dag.node_count();
    let x = NodeId::from(rng.random_range(0..n));
    let mut cond: Vec<NodeId> = dag
        .nodes()
        .filter(|&v| v != x && has_path(dag, v, x))
        .collect();
    cond.extend(
        dag.nodes()
            .filter(|&v| !has_path(dag, v, x) && !has_path(dag, x, v))
            .filter(|_| rng.random_bool(0.5)),
    );
    cond.sort();
    let g = hashed_policy(rng.random(), scm.range(x));
    let policy = Policy::from_fn(scm, x, cond.clone(), &g);
    let post = scm
        .apply(&Intervention::Conditional(policy))
        .map_err(|e| e.to_string())?;
    let mut cases = 0;
    for u in units(scm) {
        let observed = scm.evaluate(&u);
        let ctx: Vec<Value> = cond.iter().map(|&z| observed.get(z)).collect();
        let value = g(&ctx);
        let atomic = scm
            .apply(&Intervention::Atomic { node: x, value })
            .map_err(|e| e.to_string())?
            .evaluate(&u);
        let conditional = post.evaluate(&u);
        if atomic != conditional {
            return Err(format!(
                "{scm:?}: policy on {x:?} over {cond:?} at {u:?} gives {conditional:?}, \
                 atomic {value} gives {atomic:?}"
            ));
        }
        cases += 1;
    }
    Ok(cases)
}

pub fn chaining(scm: &Scm) -> Check {
    let dag = scm.dag();
    let us = units(scm);
    let mut cases = 0;
    for b in dag.nodes() {
        for z in dag.nodes().filter(|&z| z != b) {
            for y in dag.nodes().filter(|&y| y != b) {
                if has_path_avoiding(dag, b, y, z) {
                    continue;
                }
                for u in &us {
                    for v in 0..scm.range(b) {
                        let direct = scm.blocked_unrolled(y, b, v, u);
                        let mid = scm.blocked_unrolled(z, b, v, u);
                        let chained = scm.blocked_unrolled(y, z, mid, u);
                        if direct != chained {
                            return Err(format!(
                                "{scm:?}: b={b:?} z={z:?} y={y:?} v={v} at {u:?}: \
                                 {direct} vs {chained}"
                            ));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(cases)
}

pub fn connector_dominance(scm: &Scm) -> Check {
    let dag = scm.dag();
    let us = units(scm);
    let mut cases = 0;
    for y in dag.nodes().filter(|&y| !dag.parents(y).is_empty()) {
        let res = mgiss_with_connectors(dag, y);
        for b in dag.nodes() {
            if b == y || !has_path(dag, b, y) || res.members().contains(&b) {
                continue;
            }
            let Some(z) = res.connector_of(b) else {
                return Err(format!("{dag:?}: {b:?} has no connector for {y:?}"));
            };
            for u in &us {
                let (mb, mz) = (max_atomic(scm, u, b, y), max_atomic(scm, u, z, y));
                if mb > mz {
                    return Err(format!(
                        "{scm:?}: do({b:?}) reaches {mb} > {mz} via connector {z:?} at {u:?}"
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Witness model protecting `b` inside `mgiss(y)`.
pub fn witness_for(dag: &Dag, y: NodeId, b: NodeId) -> Result<Scm, String> {
    if dag.has_edge(b, y) {
        return witness_parent(dag, y, b).map_err(|e| e.to_string());
    }
    let parents: NodeSet = dag.parents(y).iter().copied().collect();
    let lambda = find_lambda_structure(dag, b, &parents)
        .ok_or_else(|| format!("{dag:?}: no Λ-structure at {b:?} for {y:?}"))?;
    witness_lambda(dag, y, b, &lambda.path_a, &lambda.path_b).map_err(|e| e.to_string())
}

/// At the all-zero unit of each witness model, no other member of
/// `mgiss(y)` is deterministically superior to the protected node.
pub fn minimality_witnesses(dag: &Dag) -> Check {
    let mut cases = 0;
    for y in dag.nodes().filter(|&y| !dag.parents(y).is_empty()) {
        let m = mgiss(dag, y);
        for &b in &m {
            let scm = witness_for(dag, y, b)?;
            let zero = Unit::zeros(dag.node_count());
            for &x in m.iter().filter(|&&x| x != b) {
                if det_superior(&scm, &zero, x, b, y) {
                    return Err(format!(
                        "{dag:?}: {x:?} is superior to protected {b:?} for {y:?}"
                    ));
                }
            }
            cases += 1;
        }
    }
    Ok(cases)
}
