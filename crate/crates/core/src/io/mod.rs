//! Graph readers and writers: plain edge lists, a DOT subset and the
//! structure of BIF files.

mod bif;
mod dot;
mod edge_list;

pub use bif::parse_bif;
pub use dot::{parse_dot, write_dot};
pub use edge_list::{parse_edge_list, write_edge_list};

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Dag, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}, column {column}: unknown variable {name:?}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("graph is not a DAG: {0}")]
    CycleDetected(GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dot,
    Bif,
}

impl GraphFormat {
    /// Guesses the format from a file extension; anything unknown is an
    /// edge list.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("dot") | Some("gv") => GraphFormat::Dot,
            Some("bif") => GraphFormat::Bif,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Dag, GraphReadError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dot => parse_dot(text),
        GraphFormat::Bif => parse_bif(text),
    }
}

/// Interns labels to dense ids in first-appearance order and collects
/// edges, ignoring repeats.
#[derive(Default)]
pub(crate) struct GraphBuilder {
    ids: HashMap<String, usize>,
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub(crate) fn node(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.ids.insert(label.to_string(), id);
        self.labels.push(label.to_string());
        id
    }

    pub(crate) fn lookup(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    pub(crate) fn edge(&mut self, from: usize, to: usize) {
        self.edges.insert((from, to));
    }

    pub(crate) fn build(self) -> Result<Dag, GraphReadError> {
        let edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        Dag::from_edges(self.labels.len(), &edges)
            .and_then(|d| d.with_labels(self.labels))
            .map_err(GraphReadError::CycleDetected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident,
    Arrow,
    Punct(char),
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    pub(crate) fn is(&self, c: char) -> bool {
        self.kind == TokenKind::Punct(c)
    }

    pub(crate) fn describe(&self) -> String {
        match self.kind {
            TokenKind::Eof => "end of input".to_string(),
            _ => format!("{:?}", self.text),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '-')
}

/// Shared tokenizer for DOT and BIF: identifiers (bare or double-quoted),
/// `->`, single-character punctuation, and `//`, `/* */` and `#` comments.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (start_line, start_col) = (line, col);
        if c.is_whitespace() {
            bump!();
        } else if c == '#' || (c == '/' && next == Some('/')) {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
        } else if c == '/' && next == Some('*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        message: "unterminated comment".into(),
                    });
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
        } else if c == '-' && next == Some('>') {
            bump!();
            bump!();
            tokens.push(Token {
                kind: TokenKind::Arrow,
                text: "->".into(),
                line: start_line,
                column: start_col,
            });
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                if i >= chars.len() {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        message: "unterminated string".into(),
                    });
                }
                match chars[i] {
                    '"' => {
                        bump!();
                        break;
                    }
                    '\\' if matches!(chars.get(i + 1), Some('"') | Some('\\')) => {
                        bump!();
                        s.push(chars[i]);
                        bump!();
                    }
                    ch => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                text: s,
                line: start_line,
                column: start_col,
            });
        } else if is_ident_char(c) {
            let mut s = String::new();
            while i < chars.len()
                && is_ident_char(chars[i])
                && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
            {
                s.push(chars[i]);
                bump!();
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                text: s,
                line: start_line,
                column: start_col,
            });
        } else if "{}[]();,=|:".contains(c) {
            bump!();
            tokens.push(Token {
                kind: TokenKind::Punct(c),
                text: c.to_string(),
                line: start_line,
                column: start_col,
            });
        } else {
            return Err(ParseError {
                line: start_line,
                column: start_col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        text: String::new(),
        line,
        column: col,
    });
    Ok(tokens)
}

/// Cursor over a token stream.
pub(crate) struct Tokens {
    tokens: Vec<Token>,
    pos: usize,
}

impl Tokens {
    pub(crate) fn new(tokens: Vec<Token>) -> Self {
        Tokens { tokens, pos: 0 }
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Token {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)]
    }

    pub(crate) fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.next();
        if t.is(c) {
            Ok(t)
        } else {
            Err(t.error(format!("expected '{c}', found {}", t.describe())))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<Token, ParseError> {
        let t = self.next();
        if t.kind == TokenKind::Ident {
            Ok(t)
        } else {
            Err(t.error(format!("expected a name, found {}", t.describe())))
        }
    }

    /// Skips a balanced `{ ... }` block whose opening brace is next.
    pub(crate) fn skip_block(&mut self) -> Result<(), ParseError> {
        let open = self.expect('{')?;
        let mut depth = 1usize;
        loop {
            let t = self.next();
            match t.kind {
                TokenKind::Eof => return Err(open.error("unclosed block")),
                TokenKind::Punct('{') => depth += 1,
                TokenKind::Punct('}') => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
    }
}
