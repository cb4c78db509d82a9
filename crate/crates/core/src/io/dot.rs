//! A DOT subset: one `digraph` (optionally `strict` and named) holding node
//! statements, edge chains `a -> b -> c`, attribute lists (ignored) and
//! `key = value` lines (ignored). Subgraphs and undirected graphs are
//! rejected.

use std::fmt::Write;

use super::{tokenize, GraphBuilder, GraphReadError, TokenKind, Tokens};
use crate::graph::Dag;

fn skip_attributes(t: &mut Tokens) -> Result<(), super::ParseError> {
    while t.peek().is('[') {
        let open = t.next();
        loop {
            let tok = t.next();
            match tok.kind {
                TokenKind::Eof => return Err(open.error("unclosed attribute list")),
                TokenKind::Punct(']') => break,
                _ => {}
            }
        }
    }
    Ok(())
}

pub fn parse_dot(text: &str) -> Result<Dag, GraphReadError> {
    let mut t = Tokens::new(tokenize(text)?);
    let mut g = GraphBuilder::default();

    let mut head = t.ident()?;
    if head.text.eq_ignore_ascii_case("strict") {
        head = t.ident()?;
    }
    if head.text.eq_ignore_ascii_case("graph") {
        return Err(head.error("undirected graphs are not supported").into());
    }
    if !head.text.eq_ignore_ascii_case("digraph") {
        return Err(head
            .error(format!("expected `digraph`, found {}", head.describe()))
            .into());
    }
    if t.peek().kind == TokenKind::Ident {
        t.next();
    }
    t.expect('{')?;

    loop {
        let tok = t.peek().clone();
        match tok.kind {
            TokenKind::Punct('}') => {
                t.next();
                break;
            }
            TokenKind::Punct(';') | TokenKind::Punct(',') => {
                t.next();
            }
            TokenKind::Ident => {
                let lower = tok.text.to_ascii_lowercase();
                if lower == "subgraph" {
                    return Err(tok.error("subgraphs are not supported").into());
                }
                if matches!(lower.as_str(), "graph" | "node" | "edge") && t.peek_at(1).is('[') {
                    t.next();
                    skip_attributes(&mut t)?;
                    continue;
                }
                if t.peek_at(1).is('=') {
                    t.next();
                    t.next();
                    t.ident()?;
                    continue;
                }
                let first = t.next();
                skip_port(&mut t)?;
                let mut prev = g.node(&first.text);
                while t.peek().kind == TokenKind::Arrow {
                    t.next();
                    let name = t.ident()?;
                    skip_port(&mut t)?;
                    let next = g.node(&name.text);
                    g.edge(prev, next);
                    prev = next;
                }
                skip_attributes(&mut t)?;
            }
            TokenKind::Punct('{') => {
                return Err(tok.error("subgraphs are not supported").into());
            }
            _ => {
                return Err(tok.error(format!("unexpected {}", tok.describe())).into());
            }
        }
    }
    let trailing = t.peek();
    if trailing.kind != TokenKind::Eof {
        return Err(trailing
            .error(format!(
                "unexpected {} after the graph",
                trailing.describe()
            ))
            .into());
    }
    g.build()
}

/// `node:port` suffixes carry no structure.
fn skip_port(t: &mut Tokens) -> Result<(), super::ParseError> {
    while t.peek().is(':') {
        t.next();
        t.ident()?;
    }
    Ok(())
}

/// Writes the graph as a `digraph`, declaring every node before the edges.
pub fn write_dot(dag: &Dag) -> String {
    let quote = |s: String| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph G {\n");
    for v in dag.nodes() {
        writeln!(out, "  {};", quote(dag.label(v))).unwrap();
    }
    for (a, b) in dag.edges() {
        writeln!(out, "  {} -> {};", quote(dag.label(a)), quote(dag.label(b))).unwrap();
    }
    out.push_str("}\n");
    out
}
