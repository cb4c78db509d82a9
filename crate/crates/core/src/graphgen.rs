//! Random DAGs, target selection and the search-space reduction statistic.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::closure::mgiss;
use crate::graph::{Dag, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("expected degree {degree} must lie in (0, {max}] for {nodes} nodes")]
    InvalidDegree { degree: f64, nodes: usize, max: f64 },
    #[error("target {0} has no parents")]
    NoParents(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErConfig {
    pub node_count: usize,
    pub expected_degree: f64,
    pub seed: u64,
}

impl ErConfig {
    pub fn new(node_count: usize, expected_degree: f64, seed: u64) -> Self {
        ErConfig {
            node_count,
            expected_degree,
            seed,
        }
    }

    /// Edge probability giving expected total degree `expected_degree`.
    pub fn edge_probability(&self) -> Result<f64, GenError> {
        let max = self.node_count.saturating_sub(1) as f64;
        let d = self.expected_degree;
        if !(d > 0.0 && d <= max) {
            return Err(GenError::InvalidDegree {
                degree: d,
                nodes: self.node_count,
                max,
            });
        }
        Ok(d / max)
    }
}

/// Random DAG on the identity order: each pair `i < j` gets the edge `i -> j`
/// independently with probability `d / (n - 1)`. Runs in `O(n + m)` by
/// drawing the gaps between successive edges.
pub fn gen_er_dag(cfg: &ErConfig) -> Result<Dag, GenError> {
    let p = cfg.edge_probability()?;
    let n = cfg.node_count;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut edges = Vec::new();
    if p >= 1.0 {
        for i in 0..n {
            edges.extend((i + 1..n).map(|j| (i, j)));
        }
    } else {
        let gap = Geometric::new(p).expect("0 < p < 1");
        // cursor over the row-major upper triangle
        let (mut i, mut j) = (0usize, 1usize);
        loop {
            let mut skip = gap.sample(&mut rng);
            while i + 1 < n && skip >= (n - j) as u64 {
                skip -= (n - j) as u64;
                i += 1;
                j = i + 1;
            }
            if i + 1 >= n {
                break;
            }
            j += skip as usize;
            edges.push((i, j));
            j += 1;
            if j == n {
                i += 1;
                j = i + 1;
            }
        }
    }
    Ok(Dag::from_edges(n, &edges).expect("upper-triangular edges are acyclic"))
}

/// Proper-ancestor counts of every node.
pub fn proper_ancestor_counts(dag: &Dag) -> Vec<usize> {
    let n = dag.node_count();
    let words = n.div_ceil(64);
    if n > 16_384 {
        return dag.nodes().map(|v| dag.proper_ancestors(v).len()).collect();
    }
    let mut bits = vec![0u64; n * words];
    for &v in dag.topo_order() {
        let v = v.index();
        for &p in dag.parents(NodeId::from(v)) {
            let p = p.index();
            for w in 0..words {
                let src = bits[p * words + w];
                bits[v * words + w] |= src;
            }
            bits[v * words + p / 64] |= 1 << (p % 64);
        }
    }
    (0..n)
        .map(|v| {
            bits[v * words..(v + 1) * words]
                .iter()
                .map(|w| w.count_ones() as usize)
                .sum()
        })
        .collect()
}

/// Among nodes with more than one parent, the one with the most proper
/// ancestors (lowest id on ties). `None` when no node has two parents.
pub fn select_target(dag: &Dag) -> Option<NodeId> {
    if !dag.nodes().any(|v| dag.parents(v).len() > 1) {
        return None;
    }
    let counts = proper_ancestor_counts(dag);
    dag.nodes()
        .filter(|&v| dag.parents(v).len() > 1)
        .max_by_key(|v| (counts[v.index()], std::cmp::Reverse(*v)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionRecord {
    pub graph_id: String,
    pub n: usize,
    pub expected_degree: Option<f64>,
    pub target: String,
    pub n_proper_ancestors: usize,
    pub mgiss_size: usize,
    pub fraction: f64,
}

/// Share of `y`'s proper ancestors kept in its minimal superior set.
pub fn reduction_fraction(
    dag: &Dag,
    y: NodeId,
    graph_id: &str,
    expected_degree: Option<f64>,
) -> Result<ReductionRecord, GenError> {
    if dag.parents(y).is_empty() {
        return Err(GenError::NoParents(y));
    }
    let ancestors = dag.proper_ancestors(y).len();
    let size = mgiss(dag, y).len();
    Ok(ReductionRecord {
        graph_id: graph_id.to_string(),
        n: dag.node_count(),
        expected_degree,
        target: dag.label(y),
        n_proper_ancestors: ancestors,
        mgiss_size: size,
        fraction: size as f64 / ancestors as f64,
    })
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    graph_id: &'a str,
    n: usize,
    expected_degree: Option<f64>,
    target: &'a str,
    n_proper_ancestors: f64,
    mgiss_size: f64,
    fraction: f64,
}

/// Outcome of a batch of random graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStudy {
    pub node_count: usize,
    pub expected_degree: Option<f64>,
    pub records: Vec<ReductionRecord>,
    /// Graphs dropped because no node had two parents.
    pub skipped: usize,
}

impl ReductionStudy {
    pub fn mean_fraction(&self) -> Option<f64> {
        let k = self.records.len();
        (k > 0).then(|| self.records.iter().map(|r| r.fraction).sum::<f64>() / k as f64)
    }

    fn write_rows<W: Write>(&self, w: &mut csv::Writer<W>) -> csv::Result<()> {
        for r in &self.records {
            w.serialize(r)?;
        }
        if let Some(mean) = self.mean_fraction() {
            let k = self.records.len() as f64;
            let avg = |f: fn(&ReductionRecord) -> usize| {
                self.records.iter().map(f).sum::<usize>() as f64 / k
            };
            w.serialize(SummaryRow {
                graph_id: "mean",
                n: self.node_count,
                expected_degree: self.expected_degree,
                target: "",
                n_proper_ancestors: avg(|r| r.n_proper_ancestors),
                mgiss_size: avg(|r| r.mgiss_size),
                fraction: mean,
            })?;
        }
        Ok(())
    }
}

/// Per-graph rows of every study, each study followed by a `mean` row.
pub fn write_reduction_csv<W: Write>(out: W, studies: &[ReductionStudy]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if studies.iter().all(|s| s.records.is_empty()) {
        w.write_record(REDUCTION_COLUMNS)?;
    }
    for s in studies {
        s.write_rows(&mut w)?;
    }
    w.flush()?;
    Ok(())
}

pub const REDUCTION_COLUMNS: [&str; 7] = [
    "graph_id",
    "n",
    "expected_degree",
    "target",
    "n_proper_ancestors",
    "mgiss_size",
    "fraction",
];

/// Seed of graph `i` in a batch.
pub fn batch_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// Generates `count` graphs in parallel and records the reduction for each
/// graph that has a valid target. Output order follows graph index.
pub fn reduction_study(
    node_count: usize,
    expected_degree: f64,
    count: usize,
    seed: u64,
) -> Result<ReductionStudy, GenError> {
    ErConfig::new(node_count, expected_degree, seed).edge_probability()?;
    let rows: Vec<Option<ReductionRecord>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let cfg = ErConfig::new(node_count, expected_degree, batch_seed(seed, i));
            let dag = gen_er_dag(&cfg).expect("config validated");
            let y = select_target(&dag)?;
            Some(
                reduction_fraction(&dag, y, &i.to_string(), Some(expected_degree))
                    .expect("target has parents"),
            )
        })
        .collect();
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    Ok(ReductionStudy {
        node_count,
        expected_degree: Some(expected_degree),
        records: rows.into_iter().flatten().collect(),
        skipped,
    })
}
