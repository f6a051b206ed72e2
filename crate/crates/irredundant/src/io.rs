//! Edge-list and DOT-subset readers plus the edge-list writer.
//!
//! Edge-list format: UTF-8, LF line endings, `#` starts a comment line,
//! first significant line is `n <count>`, then one `<u> <v>` line per
//! directed edge with 0-based labels.
//!
//! DOT subset: `digraph name { a -> b; ... }` with bare or double-quoted
//! identifiers; names map to dense labels in first-appearance order. No
//! attributes, subgraphs, or undirected edges.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dot,
}

pub fn parse(input: &str, format: Format) -> Result<Digraph> {
    match format {
        Format::EdgeList => parse_edge_list(input),
        Format::Dot => parse_dot(input),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_edge_list(input: &str) -> Result<Digraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match header {
            None => {
                if fields.next() != Some("n") {
                    return Err(parse_err(lineno, "expected header `n <count>`"));
                }
                let count: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "expected vertex count after `n`"))?;
                if fields.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after header"));
                }
                header = Some((count, lineno));
            }
            Some((n, _)) => {
                let mut num = |what: &str| -> Result<usize> {
                    fields
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(lineno, format!("expected {what} label")))
                };
                let u = num("tail")?;
                let v = num("head")?;
                if fields.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after edge"));
                }
                for w in [u, v] {
                    if w >= n {
                        return Err(parse_err(
                            lineno,
                            format!("vertex {w} out of range for n = {n}"),
                        ));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, format!("loop at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, header_line) = header.ok_or_else(|| parse_err(1, "missing header `n <count>`"))?;
    Digraph::build(n, &edges).map_err(|e| parse_err(header_line, e.to_string()))
}

/// Serializes in the bit-exact on-disk form; `parse_edge_list` of the
/// output reconstructs an identical graph.
pub fn to_edge_list(g: &Digraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n {}", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_dot(input: &str) -> Result<Digraph> {
    let tokens = tokenize_dot(input)?;
    let mut pos = 0;
    let expect = |pos: &mut usize, want: &str, tokens: &[Token]| -> Result<()> {
        match tokens.get(*pos) {
            Some(t) if t.text == want => {
                *pos += 1;
                Ok(())
            }
            Some(t) => Err(parse_err(t.line, format!("expected `{want}`, found `{}`", t.text))),
            None => Err(parse_err(last_line(tokens), format!("expected `{want}`"))),
        }
    };

    expect(&mut pos, "digraph", &tokens)?;
    // optional graph name
    if tokens.get(pos).map_or(false, |t| t.text != "{") {
        pos += 1;
    }
    expect(&mut pos, "{", &tokens)?;

    let mut labels: HashMap<String, usize> = HashMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut intern = |name: &Token| -> usize {
        *labels.entry(name.text.clone()).or_insert_with(|| {
            order.push(name.text.clone());
            order.len() - 1
        })
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    loop {
        let tok = tokens
            .get(pos)
            .ok_or_else(|| parse_err(last_line(&tokens), "expected `}`"))?;
        if tok.text == "}" {
            pos += 1;
            break;
        }
        if !tok.is_ident {
            return Err(parse_err(tok.line, format!("expected node name, found `{}`", tok.text)));
        }
        let mut prev = intern(tok);
        pos += 1;
        // a -> b -> c; chains allowed
        loop {
            expect(&mut pos, "->", &tokens)?;
            let head = tokens
                .get(pos)
                .filter(|t| t.is_ident)
                .ok_or_else(|| parse_err(last_line(&tokens), "expected node name after `->`"))?;
            let hv = intern(head);
            if hv == prev {
                return Err(parse_err(head.line, format!("loop at node `{}`", head.text)));
            }
            edges.push((prev, hv));
            prev = hv;
            pos += 1;
            match tokens.get(pos).map(|t| t.text.as_str()) {
                Some("->") => continue,
                Some(";") => {
                    pos += 1;
                    break;
                }
                _ => break,
            }
        }
    }
    if let Some(t) = tokens.get(pos) {
        return Err(parse_err(t.line, format!("unexpected `{}` after `}}`", t.text)));
    }
    Digraph::build(order.len(), &edges).map_err(|e| parse_err(1, e.to_string()))
}

struct Token {
    text: String,
    line: usize,
    is_ident: bool,
}

fn last_line(tokens: &[Token]) -> usize {
    tokens.last().map_or(1, |t| t.line)
}

fn tokenize_dot(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '/' => {
                chars.next();
                match chars.peek() {
                    Some('/') => {
                        while let Some(&c) = chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            chars.next();
                        }
                    }
                    _ => return Err(parse_err(line, "unexpected `/`")),
                }
            }
            '{' | '}' | ';' => {
                chars.next();
                tokens.push(Token {
                    text: c.to_string(),
                    line,
                    is_ident: false,
                });
            }
            '-' => {
                chars.next();
                if chars.next() != Some('>') {
                    return Err(parse_err(line, "expected `->`"));
                }
                tokens.push(Token {
                    text: "->".into(),
                    line,
                    is_ident: false,
                });
            }
            '"' => {
                chars.next();
                let mut text = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') | None => {
                            return Err(parse_err(line, "unterminated quoted identifier"))
                        }
                        Some(c) => text.push(c),
                    }
                }
                if text.is_empty() {
                    return Err(parse_err(line, "empty quoted identifier"));
                }
                tokens.push(Token {
                    text,
                    line,
                    is_ident: true,
                });
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        text.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let is_ident = text != "digraph";
                tokens.push(Token {
                    text,
                    line,
                    is_ident,
                });
            }
            other => return Err(parse_err(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}
