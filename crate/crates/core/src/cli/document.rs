//! The line-oriented graft file format.
//!
//! ```text
//! graft v1
//! # a path with terminals at both ends
//! v a t
//! v b
//! v c t
//! e a b
//! e b c
//! ```
//!
//! `v <id> [t]` declares a vertex, `t` marking it a terminal; `e <id> <id>`
//! declares an edge between declared vertices. Identifiers use letters,
//! digits, `_`, `.` and `-`. Blank lines and text after `#` are ignored.
//! The header line is optional on input and always written on output.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{EdgeSet, Graph};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDecl {
    pub id: String,
    pub terminal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraftDocument {
    pub version: u32,
    pub vertices: Vec<VertexDecl>,
    pub edges: Vec<(String, String)>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Whitespace-separated tokens with their 1-based columns, up to a `#`.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((content[..s].chars().count() + 1, &content[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

impl GraftDocument {
    pub fn parse(text: &str) -> Result<GraftDocument> {
        let mut doc = GraftDocument { version: FORMAT_VERSION, vertices: Vec::new(), edges: Vec::new() };
        let mut declared: HashSet<String> = HashSet::new();
        let mut pairs: HashSet<(String, String)> = HashSet::new();
        let mut seen_content = false;
        for (index, line) in text.lines().enumerate() {
            let ln = index + 1;
            let toks = tokens(line);
            let Some(&(col, keyword)) = toks.first() else { continue };
            let check_id = |&(c, id): &(usize, &str)| -> Result<String> {
                if valid_id(id) {
                    Ok(id.to_string())
                } else {
                    Err(parse_error(ln, c, format!("invalid identifier `{id}`")))
                }
            };
            match keyword {
                "graft" => {
                    if seen_content {
                        return Err(parse_error(ln, col, "header must come first"));
                    }
                    match toks.get(1..) {
                        Some([(_, "v1")]) => doc.version = 1,
                        Some([(c, other)]) => return Err(parse_error(ln, *c, format!("unsupported version `{other}`"))),
                        _ => return Err(parse_error(ln, col, "expected `graft v1`")),
                    }
                }
                "v" => {
                    let (id, terminal) = match &toks[1..] {
                        [id] => (check_id(id)?, false),
                        [id, (_, "t")] => (check_id(id)?, true),
                        [_, (c, other)] => return Err(parse_error(ln, *c, format!("expected `t`, found `{other}`"))),
                        [] => return Err(parse_error(ln, col, "missing vertex identifier")),
                        [_, _, (c, _), ..] => return Err(parse_error(ln, *c, "unexpected token")),
                    };
                    if !declared.insert(id.clone()) {
                        return Err(parse_error(ln, toks[1].0, format!("duplicate vertex `{id}`")));
                    }
                    doc.vertices.push(VertexDecl { id, terminal });
                }
                "e" => {
                    let (a, b) = match &toks[1..] {
                        [a, b] => (a, b),
                        [_, _, (c, _), ..] => return Err(parse_error(ln, *c, "unexpected token")),
                        _ => return Err(parse_error(ln, col, "an edge needs two endpoints")),
                    };
                    let (ia, ib) = (check_id(a)?, check_id(b)?);
                    for (tok, id) in [(a, &ia), (b, &ib)] {
                        if !declared.contains(id) {
                            return Err(parse_error(ln, tok.0, format!("undeclared vertex `{id}`")));
                        }
                    }
                    if ia == ib {
                        return Err(parse_error(ln, b.0, format!("self-loop at `{ia}`")));
                    }
                    let key = if ia < ib { (ia.clone(), ib.clone()) } else { (ib.clone(), ia.clone()) };
                    if !pairs.insert(key) {
                        return Err(parse_error(ln, col, format!("duplicate edge `{ia} {ib}`")));
                    }
                    doc.edges.push((ia, ib));
                }
                other => return Err(parse_error(ln, col, format!("unknown declaration `{other}`"))),
            }
            seen_content = true;
        }
        Ok(doc)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("graft v{}\n", self.version);
        for v in &self.vertices {
            out.push_str(&format!("v {}{}\n", v.id, if v.terminal { " t" } else { "" }));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("e {a} {b}\n"));
        }
        out
    }

    /// Builds the graft; fails with the offending component if some
    /// component holds an odd number of terminals.
    pub fn to_graft(&self) -> Result<Graft> {
        let names: Vec<&str> = self.vertices.iter().map(|v| v.id.as_str()).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let graph = Graph::new(&names, &edges)?;
        let terminals: Vec<&str> = self.vertices.iter().filter(|v| v.terminal).map(|v| v.id.as_str()).collect();
        Graft::with_names(graph, &terminals)
    }

    /// The document of a simple graft: vertices in identifier order, edges in
    /// identifier order.
    pub fn from_graft(graft: &Graft) -> GraftDocument {
        let g = graft.graph();
        GraftDocument {
            version: FORMAT_VERSION,
            vertices: g.vertices().map(|v| VertexDecl { id: g.name(v).to_string(), terminal: graft.is_terminal(v) }).collect(),
            edges: g.edges().iter().map(|e| (g.name(e.u).to_string(), g.name(e.v).to_string())).collect(),
        }
    }
}

pub fn parse_graft(text: &str) -> Result<Graft> {
    GraftDocument::parse(text)?.to_graft()
}

pub fn serialize_graft(graft: &Graft) -> String {
    GraftDocument::from_graft(graft).serialize()
}

/// Reads a join file: one edge per line, written `a b` or `e a b`.
pub fn parse_join(text: &str, graph: &Graph) -> Result<EdgeSet> {
    let mut out = EdgeSet::new();
    let index: HashMap<&str, usize> = graph.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    for (i, line) in text.lines().enumerate() {
        let toks = tokens(line);
        let ends = match toks.as_slice() {
            [] => continue,
            [(_, "e"), a, b] | [a, b] => [a, b],
            [(c, _), ..] => return Err(parse_error(i + 1, *c, "expected `a b` or `e a b`")),
        };
        for &&(c, id) in &ends {
            if !index.contains_key(id) {
                return Err(parse_error(i + 1, c, format!("unknown vertex `{id}`")));
            }
        }
        let id = graph
            .edge_between(ends[0].1, ends[1].1)
            .map_err(|_| parse_error(i + 1, ends[0].0, format!("no edge `{} {}`", ends[0].1, ends[1].1)))?;
        if !out.insert(id) {
            return Err(parse_error(i + 1, ends[0].0, "edge listed twice"));
        }
    }
    Ok(out)
}
