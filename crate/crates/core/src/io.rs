//! Text formats: the edge-list graph format and DOT export.
//!
//! Edge lists start with a `n m` header followed by `m` lines `u v` with
//! `u < v`. Lines starting with `#` are comments and blank lines are ignored.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Iterates over meaningful lines as `(1-based line number, trimmed text)`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(idx, l)| (idx + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_usizes(line_no: usize, line: &str) -> Result<Vec<usize>, GraphError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected a non-negative integer, got {tok:?}")))
        })
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let nums = parse_usizes(hl, header)?;
    let [n, m] = nums[..] else {
        return Err(parse_err(hl, "header must be `n m`"));
    };
    let mut g = Graph::new(n);
    let mut count = 0;
    for (ln, line) in lines {
        let nums = parse_usizes(ln, line)?;
        let [u, v] = nums[..] else {
            return Err(parse_err(ln, "edge lines must be `u v`"));
        };
        if u >= v {
            return Err(parse_err(ln, format!("edge endpoints must satisfy u < v, got {u} {v}")));
        }
        if v >= n {
            return Err(parse_err(ln, format!("vertex {v} out of range for n = {n}")));
        }
        if !g.add_edge(u, v) {
            return Err(parse_err(ln, format!("duplicate edge {u} {v}")));
        }
        count += 1;
    }
    if count != m {
        return Err(parse_err(hl, format!("header announces {m} edges, found {count}")));
    }
    Ok(g)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// DOT rendering for documentation; labels are used when present.
pub fn format_dot(g: &Graph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {name} {{");
    for v in g.vertices() {
        match g.label(v) {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label={:?}];", l);
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
