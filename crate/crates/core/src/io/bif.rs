//! BIF structure only. `variable NAME { ... }` blocks declare nodes in order
//! and `probability ( CHILD | P1, P2 ) { ... }` headers add the edges
//! `Pi -> CHILD`. Block bodies, including CPT tables, are skipped by brace
//! balance.

use super::{tokenize, GraphBuilder, GraphReadError, Token, TokenKind, Tokens};
use crate::graph::Dag;

fn declared(g: &GraphBuilder, name: &Token) -> Result<usize, GraphReadError> {
    g.lookup(&name.text)
        .ok_or_else(|| GraphReadError::UnknownVariable {
            name: name.text.clone(),
            line: name.line,
            column: name.column,
        })
}

pub fn parse_bif(text: &str) -> Result<Dag, GraphReadError> {
    let mut t = Tokens::new(tokenize(text)?);
    let mut g = GraphBuilder::default();
    let mut families: Vec<(Token, Vec<Token>)> = Vec::new();

    loop {
        let tok = t.next();
        match (&tok.kind, tok.text.as_str()) {
            (TokenKind::Eof, _) => break,
            (TokenKind::Ident, "network") => {
                while !t.peek().is('{') {
                    if t.peek().kind == TokenKind::Eof {
                        let eof = t.peek();
                        return Err(eof.error("expected a network block").into());
                    }
                    t.next();
                }
                t.skip_block()?;
            }
            (TokenKind::Ident, "variable") => {
                let name = t.ident()?;
                g.node(&name.text);
                t.skip_block()?;
            }
            (TokenKind::Ident, "probability") => {
                t.expect('(')?;
                let child = t.ident()?;
                let mut parents = Vec::new();
                if t.peek().is('|') {
                    t.next();
                    loop {
                        parents.push(t.ident()?);
                        if t.peek().is(',') {
                            t.next();
                        } else {
                            break;
                        }
                    }
                }
                t.expect(')')?;
                t.skip_block()?;
                families.push((child, parents));
            }
            _ => {
                return Err(tok
                    .error(format!(
                        "expected `network`, `variable` or `probability`, found {}",
                        tok.describe()
                    ))
                    .into())
            }
        }
    }

    // probability blocks may precede the variable they mention
    for (child, parents) in &families {
        let c = declared(&g, child)?;
        for p in parents {
            let p = declared(&g, p)?;
            g.edge(p, c);
        }
    }
    g.build()
}
