mod common;

use common::{
    all_dags, all_paths, has_path, oracle_closure, random_dag, random_subset, subset,
    uninterrupted_hits,
};
use mgiss::closure::{
    c4, find_lambda_structure, lambda_nodes, lsca_closure, mgiss_with_connectors,
};
use mgiss::fixtures;
use mgiss::{NodeId, NodeSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn closure_matches_path_oracle_on_four_nodes() {
    for dag in all_dags(4) {
        for mask in 0..16 {
            let set = subset(4, mask);
            assert_eq!(
                c4(&dag, &set).into_members(),
                oracle_closure(&dag, &set),
                "{dag:?} {set:?}"
            );
        }
    }
}

#[test]
fn worked_examples() {
    let d = fixtures::diamond();
    let r = mgiss_with_connectors(&d, NodeId(3));
    assert_eq!(r.members(), &mgiss::graph::node_set([0, 1, 2]));
    assert_eq!(r.connector_of(NodeId(0)), Some(NodeId(0)));

    let f = fixtures::nested_parents();
    let y = f.find_label("Y").unwrap();
    let names: Vec<String> = mgiss::mgiss(&f, y).iter().map(|&v| f.label(v)).collect();
    assert_eq!(names, ["Z", "X1", "A1", "A2"]);
}

fn subset_of(a: &NodeSet, b: &NodeSet) -> bool {
    a.is_subset(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn three_computations_agree(seed in any::<u64>(), n in 1usize..11, p in 0.1f64..0.7, q in 0.0f64..0.6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = random_dag(&mut rng, n, p);
        let set = random_subset(&mut rng, n, q);
        let fast = c4(&dag, &set).into_members();
        prop_assert_eq!(&fast, &lsca_closure(&dag, &set));
        prop_assert_eq!(&fast, &lambda_nodes(&dag, &set, 15).unwrap());
    }

    #[test]
    fn closure_is_monotone_idempotent_and_contained(
        seed in any::<u64>(), n in 1usize..14, p in 0.1f64..0.6,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = random_dag(&mut rng, n, p);
        let big = random_subset(&mut rng, n, 0.5);
        let small: NodeSet = big.iter().copied().filter(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect();
        let lb = c4(&dag, &big).into_members();
        let ls = c4(&dag, &small).into_members();
        prop_assert!(subset_of(&ls, &lb));
        prop_assert_eq!(&c4(&dag, &lb).into_members(), &lb);
        prop_assert!(subset_of(&big, &lb));
        for v in &lb {
            prop_assert!(big.iter().any(|&u| has_path(&dag, *v, u)));
        }
    }

    #[test]
    fn connectors_are_the_unique_uninterrupted_hits(
        seed in any::<u64>(), n in 1usize..14, p in 0.1f64..0.6, q in 0.0f64..0.5,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = random_dag(&mut rng, n, p);
        let set = random_subset(&mut rng, n, q);
        let res = c4(&dag, &set);
        for v in dag.nodes() {
            let hits = uninterrupted_hits(&dag, v, res.members());
            prop_assert!(hits.len() <= 1, "{:?} reaches {:?}", v, hits);
            prop_assert_eq!(res.connector_of(v), hits.first().copied());
        }
    }

    #[test]
    fn every_path_to_the_target_crosses_the_connector(
        seed in any::<u64>(), n in 2usize..9, p in 0.2f64..0.7,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = random_dag(&mut rng, n, p);
        for y in dag.nodes().filter(|&y| !dag.parents(y).is_empty()) {
            let res = mgiss_with_connectors(&dag, y);
            for v in dag.nodes() {
                if v == y || !has_path(&dag, v, y) || res.members().contains(&v) {
                    continue;
                }
                let z = res.connector_of(v);
                prop_assert!(z.is_some());
                for path in all_paths(&dag, v, y) {
                    prop_assert!(path.contains(&z.unwrap()));
                }
            }
        }
    }

    #[test]
    fn lambda_structures_are_valid_and_found_for_members(
        seed in any::<u64>(), n in 1usize..12, p in 0.1f64..0.7, q in 0.0f64..0.5,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = random_dag(&mut rng, n, p);
        let set = random_subset(&mut rng, n, q);
        let members = c4(&dag, &set).into_members();
        for v in dag.nodes() {
            let found = find_lambda_structure(&dag, v, &set);
            prop_assert_eq!(found.is_some(), members.contains(&v));
            if let Some(l) = found {
                prop_assert!(l.is_valid(&dag, &set));
            }
        }
    }
}
