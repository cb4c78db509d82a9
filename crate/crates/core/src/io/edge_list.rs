//! Edge lists: one `SRC DST` or `SRC -> DST` per line, `#` starts a comment.
//! A line holding a single name declares a node, which is how isolated nodes
//! are written. Ids follow first appearance.

use std::fmt::Write;

use super::{GraphBuilder, GraphReadError, ParseError};
use crate::graph::Dag;

/// Whitespace-separated tokens with their 1-based character columns.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((sc, sb))) => {
                out.push((sc, &line[sb..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sc, sb)) = start {
        out.push((sc, &line[sb..]));
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Dag, GraphReadError> {
    let mut g = GraphBuilder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks = fields(line);
        let err = |column: usize, message: &str| ParseError {
            line: i + 1,
            column,
            message: message.to_string(),
        };
        match toks.as_slice() {
            [] => {}
            [(c, "->")] => return Err(err(*c, "arrow without endpoints").into()),
            [(_, a)] => {
                g.node(a);
            }
            [(_, a), (c, b)] | [(_, a), (_, "->"), (c, b)] => {
                if *b == "->" {
                    return Err(err(*c, "missing edge target").into());
                }
                if *a == "->" {
                    return Err(err(1, "missing edge source").into());
                }
                let (a, b) = (g.node(a), g.node(b));
                g.edge(a, b);
            }
            [_, _, (c, _), ..] => {
                return Err(err(*c, "expected `SRC DST` or `SRC -> DST`").into());
            }
        }
    }
    g.build()
}

/// Writes every node on its own line, then every edge, so that parsing the
/// output gives back the same graph. Labels must be whitespace-free, must
/// not contain `#` and must not be `->`.
pub fn write_edge_list(dag: &Dag) -> String {
    let mut out = String::new();
    for v in dag.nodes() {
        writeln!(out, "{}", dag.label(v)).unwrap();
    }
    for (a, b) in dag.edges() {
        writeln!(out, "{} -> {}", dag.label(a), dag.label(b)).unwrap();
    }
    out
}
