//! Plain-text multigraph format.
//!
//! ```text
//! # two vertices joined by four parallel edges
//! 2 4
//! 0 1
//! 0 1
//! 0 1
//! 0 1
//! ```
//!
//! Line 1 is `n m`, followed by `m` lines `u v`. `u u` is a loop, repeated
//! lines are parallel edges, and `#` starts a comment. A stream may hold
//! several documents back to back.

use std::fmt::Write as _;

use super::dart::DartGraph;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let line = line.trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::malformed(format!("line {lineno}: expected two integers")))?
            .parse::<usize>()
            .map_err(|e| Error::malformed(format!("line {lineno}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::malformed(format!("line {lineno}: trailing tokens")));
    }
    Ok((a, b))
}

/// Parses every document in `text`.
pub fn parse_graphs(text: &str) -> Result<Vec<DartGraph>> {
    let mut lines = content_lines(text);
    let mut out = Vec::new();
    while let Some((lineno, header)) = lines.next() {
        let (n, m) = parse_pair(lineno, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (lineno, line) = lines.next().ok_or_else(|| {
                Error::malformed(format!("expected {m} edges, found {}", edges.len()))
            })?;
            edges.push(parse_pair(lineno, line)?);
        }
        out.push(DartGraph::from_edges(n, &edges)?);
    }
    Ok(out)
}

/// Parses exactly one document.
pub fn parse_graph(text: &str) -> Result<DartGraph> {
    let mut graphs = parse_graphs(text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap()),
        0 => Err(Error::malformed("empty document")),
        k => Err(Error::malformed(format!("expected one graph, found {k}"))),
    }
}

/// Writes the graph with its edges sorted lexicographically.
pub fn serialize_graph(g: &DartGraph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
