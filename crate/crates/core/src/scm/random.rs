//! Random discrete SCMs over a fixed graph, for property tests.

use rand::Rng;

use super::{Scm, Value};
use crate::graph::Dag;

#[derive(Debug, Clone, Copy)]
pub struct RandomScmConfig {
    /// Ranges are drawn uniformly from `2..=max_range`.
    pub max_range: u32,
    /// Noise supports are drawn uniformly from `1..=max_noise`.
    pub max_noise: u32,
}

impl Default for RandomScmConfig {
    fn default() -> Self {
        RandomScmConfig {
            max_range: 3,
            max_noise: 3,
        }
    }
}

/// Uniform random tables and random strictly positive noise weights.
pub fn random_scm<R: Rng + ?Sized>(dag: &Dag, config: RandomScmConfig, rng: &mut R) -> Scm {
    let ranges: Vec<u32> = dag
        .nodes()
        .map(|_| rng.random_range(2..=config.max_range.max(2)))
        .collect();
    let noise: Vec<Vec<f64>> = dag
        .nodes()
        .map(|_| {
            let k = rng.random_range(1..=config.max_noise.max(1));
            let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
            let total: f64 = w.iter().sum();
            let mut p: Vec<f64> = w.iter().map(|x| x / total).collect();
            // absorb rounding so the sum is 1 to within an ulp or two
            let rest: f64 = p[..p.len() - 1].iter().sum();
            *p.last_mut().unwrap() = 1.0 - rest;
            p
        })
        .collect();
    let tables = dag
        .nodes()
        .map(|v| {
            let rows: usize = dag
                .parents(v)
                .iter()
                .map(|p| ranges[p.index()] as usize)
                .product::<usize>()
                * noise[v.index()].len();
            (0..rows)
                .map(|_| rng.random_range(0..ranges[v.index()]) as Value)
                .collect()
        })
        .collect();
    Scm::new(dag.clone(), ranges, noise, tables).expect("generated model is well formed")
}
