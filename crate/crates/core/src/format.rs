//! Text formats for graphs and operation streams.
//!
//! Graph file: a header `p <n> <m>` followed by exactly `m` lines `e <u> <v>`
//! with one-based vertex numbers. Operation stream: lines `av`, `ae <u> <v>`,
//! `de <u> <v>` and `q <u> <v>`. In both, blank lines and everything after a
//! `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// One entry of an operation stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    AddVertex,
    AddEdge(VertexId, VertexId),
    DeleteEdge(VertexId, VertexId),
    Query(VertexId, VertexId),
}

/// Non-empty, comment-stripped lines with their one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_count(line: usize, field: &str) -> Result<usize, ParseError> {
    field.parse::<usize>().map_err(|_| {
        ParseError::new(
            line,
            format!("expected a non-negative integer, found `{field}`"),
        )
    })
}

fn parse_vertex(line: usize, field: &str, bound: Option<usize>) -> Result<VertexId, ParseError> {
    let value = parse_count(line, field)?;
    if value == 0 {
        return Err(ParseError::new(line, "vertex numbers start at 1"));
    }
    if let Some(n) = bound {
        if value > n {
            return Err(ParseError::new(
                line,
                format!("vertex {value} out of range 1..={n}"),
            ));
        }
    }
    Ok(VertexId::from_index(value - 1))
}

fn expect_arity(line: usize, fields: &[&str], arity: usize) -> Result<(), ParseError> {
    if fields.len() != arity {
        return Err(ParseError::new(
            line,
            format!(
                "`{}` takes {} argument(s), found {}",
                fields[0],
                arity - 1,
                fields.len() - 1
            ),
        ));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Multigraph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header `p <n> <m>`"))?;
    if header[0] != "p" {
        return Err(ParseError::new(hline, "expected header `p <n> <m>`"));
    }
    expect_arity(hline, &header, 3)?;
    let n = parse_count(hline, header[1])?;
    let m = parse_count(hline, header[2])?;
    let mut g = Multigraph::with_vertices(n);
    let mut last_line = hline;
    for (line, fields) in lines {
        last_line = line;
        if fields[0] != "e" {
            return Err(ParseError::new(
                line,
                format!("unexpected record `{}`", fields[0]),
            ));
        }
        expect_arity(line, &fields, 3)?;
        let u = parse_vertex(line, fields[1], Some(n))?;
        let v = parse_vertex(line, fields[2], Some(n))?;
        g.add_edge(u, v)
            .map_err(|e| ParseError::new(line, e.to_string()))?;
        if g.edge_count() > m {
            return Err(ParseError::new(
                line,
                format!("more than the {m} edges declared"),
            ));
        }
    }
    if g.edge_count() != m {
        return Err(ParseError::new(
            last_line,
            format!("header declares {m} edges, found {}", g.edge_count()),
        ));
    }
    Ok(g)
}

/// Canonical text: header, then live edges in id order.
pub fn serialize_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (_, u, v) in g.edges() {
        writeln!(out, "e {} {}", u.0 + 1, v.0 + 1).unwrap();
    }
    out
}

/// Parses an operation stream. Vertex numbers are checked against the number
/// of `av` lines seen so far.
pub fn parse_ops(text: &str) -> Result<Vec<Op>, ParseError> {
    let mut ops = Vec::new();
    let mut vertices = 0usize;
    for (line, fields) in content_lines(text) {
        let pair = |fields: &[&str]| -> Result<(VertexId, VertexId), ParseError> {
            expect_arity(line, fields, 3)?;
            Ok((
                parse_vertex(line, fields[1], Some(vertices))?,
                parse_vertex(line, fields[2], Some(vertices))?,
            ))
        };
        let op = match fields[0] {
            "av" => {
                expect_arity(line, &fields, 1)?;
                vertices += 1;
                Op::AddVertex
            }
            "ae" => {
                let (u, v) = pair(&fields)?;
                if u == v {
                    return Err(ParseError::new(line, "self-loops are not allowed"));
                }
                Op::AddEdge(u, v)
            }
            "de" => {
                let (u, v) = pair(&fields)?;
                Op::DeleteEdge(u, v)
            }
            "q" => {
                let (u, v) = pair(&fields)?;
                Op::Query(u, v)
            }
            other => {
                return Err(ParseError::new(
                    line,
                    format!("unknown operation `{other}`"),
                ))
            }
        };
        ops.push(op);
    }
    Ok(ops)
}

pub fn serialize_ops(ops: &[Op]) -> String {
    let mut out = String::new();
    for op in ops {
        match *op {
            Op::AddVertex => out.push_str("av\n"),
            Op::AddEdge(u, v) => writeln!(out, "ae {} {}", u.0 + 1, v.0 + 1).unwrap(),
            Op::DeleteEdge(u, v) => writeln!(out, "de {} {}", u.0 + 1, v.0 + 1).unwrap(),
            Op::Query(u, v) => writeln!(out, "q {} {}", u.0 + 1, v.0 + 1).unwrap(),
        }
    }
    out
}
