//! Small named graphs used by examples, tests and the CLI.

use crate::graph::Dag;

fn labelled(names: &[&str], edges: &[(&str, &str)]) -> Dag {
    let id = |s: &str| names.iter().position(|n| *n == s).expect("known label");
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (id(a), id(b))).collect();
    Dag::from_edges(names.len(), &edges)
        .and_then(|d| d.with_labels(names.iter().map(|s| s.to_string()).collect()))
        .expect("fixture graph is a DAG")
}

/// Two parents with a shared lowest common ancestor `X1` above them and a
/// further ancestor `X0`: `X0 -> X1 -> {A1, A2} -> Y`.
pub fn shared_apex() -> Dag {
    labelled(
        &["X0", "X1", "A1", "A2", "Y"],
        &[
            ("X0", "X1"),
            ("X1", "A1"),
            ("X1", "A2"),
            ("A1", "Y"),
            ("A2", "Y"),
        ],
    )
}

/// Parent `A1` is itself an ancestor of parent `A2`, so the plain LCA of the
/// parents is `A1`; the closure of `{A1, A2}` still contains `X1` and `Z`.
pub fn nested_parents() -> Dag {
    labelled(
        &["Z", "X1", "A1", "A2", "Y"],
        &[
            ("Z", "X1"),
            ("Z", "A2"),
            ("X1", "A1"),
            ("X1", "A2"),
            ("A1", "A2"),
            ("A1", "Y"),
            ("A2", "Y"),
        ],
    )
}

/// `0 -> {1, 2} -> 3`.
pub fn diamond() -> Dag {
    Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond is a DAG")
}

/// Diamond with an extra root `R` feeding the apex: `R -> B -> {A1, A2} -> Y`.
pub fn rooted_diamond() -> Dag {
    labelled(
        &["R", "B", "A1", "A2", "Y"],
        &[
            ("R", "B"),
            ("B", "A1"),
            ("B", "A2"),
            ("A1", "Y"),
            ("A2", "Y"),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;

    #[test]
    fn lca_of_worked_examples() {
        let b = shared_apex();
        let id = |d: &Dag, s: &str| d.find_label(s).unwrap();
        let lca = b.lca(id(&b, "A1"), id(&b, "A2"));
        assert_eq!(lca.into_iter().collect::<Vec<_>>(), vec![id(&b, "X1")]);
        let c = nested_parents();
        let lca = c.lca(id(&c, "A1"), id(&c, "A2"));
        assert_eq!(lca.into_iter().collect::<Vec<_>>(), vec![id(&c, "A1")]);
        assert_eq!(c.label(NodeId(0)), "Z");
    }
}
