//! The `.tg` text format.
//!
//! ```text
//! # comment
//! tau 10          (optional; defaults to the largest arrival time)
//! vertex z        (optional; declares a vertex, e.g. an isolated one)
//! root r          (optional sidecar written by generators)
//! k 13            (optional sidecar written by TOSS generators)
//! 1 2 6 7         (tail head t_start t_arrive)
//! ```
//!
//! Vertex ids are assigned by first appearance, counting `vertex` lines and arc
//! lines alike. Directive lines have two tokens, arc lines four.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, TemporalArc, TemporalGraph, Time, VertexId};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("declared tau {declared} is smaller than the largest arrival time {max_arrival}")]
    TauTooSmall { declared: Time, max_arrival: Time },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parsed `.tg` file: the graph plus optional generator sidecars.
#[derive(Debug, Clone)]
pub struct TgDocument {
    pub graph: TemporalGraph,
    pub root: Option<String>,
    pub k: Option<usize>,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_tg(text: &str) -> Result<TgDocument, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut intern = |name: &str, labels: &mut Vec<String>| -> VertexId {
        if let Some(&v) = index.get(name) {
            return v;
        }
        let v = labels.len();
        labels.push(name.to_string());
        index.insert(name.to_string(), v);
        v
    };
    let mut arcs = Vec::new();
    let mut tau: Option<Time> = None;
    let mut root = None;
    let mut k = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks.as_slice() {
            ["tau", value] => {
                if tau.is_some() {
                    return Err(syntax(line, "duplicate tau header"));
                }
                tau = Some(parse_num(value, line, "tau")?);
            }
            ["vertex", name] => {
                intern(name, &mut labels);
            }
            ["root", name] => root = Some(name.to_string()),
            ["k", value] => k = Some(parse_num(value, line, "k")?),
            [u, v, s, t] => {
                let s: Time = parse_num(s, line, "start time")?;
                let t: Time = parse_num(t, line, "arrival time")?;
                let u = intern(u, &mut labels);
                let v = intern(v, &mut labels);
                arcs.push(TemporalArc::new(u, v, s, t));
            }
            _ => {
                return Err(syntax(
                    line,
                    format!("expected `<tail> <head> <t_start> <t_arrive>`, got `{trimmed}`"),
                ))
            }
        }
    }

    let max_arrival = arcs.iter().map(|a| a.t_arrive).max().unwrap_or(1);
    let lifetime = match tau {
        Some(declared) if declared < max_arrival => {
            return Err(ParseError::TauTooSmall {
                declared,
                max_arrival,
            })
        }
        Some(declared) => declared,
        None => max_arrival,
    };
    let graph = TemporalGraph::new(labels, arcs, lifetime)?;
    if let Some(name) = &root {
        graph.require_vertex(name)?;
    }
    Ok(TgDocument { graph, root, k })
}

/// Writes the graph in `.tg` form. Vertex lines are emitted only when needed
/// to reproduce the vertex numbering.
pub fn write_tg(graph: &TemporalGraph, out: &mut impl fmt::Write) -> fmt::Result {
    writeln!(out, "tau {}", graph.lifetime())?;
    if !arc_order_reproduces_labels(graph) {
        for label in graph.labels() {
            writeln!(out, "vertex {label}")?;
        }
    }
    for a in graph.arcs() {
        writeln!(
            out,
            "{} {} {} {}",
            graph.label(a.tail),
            graph.label(a.head),
            a.t_start,
            a.t_arrive
        )?;
    }
    Ok(())
}

/// Serializes a generator output: the graph, then `root` and optional `k`.
pub fn write_instance(graph: &TemporalGraph, root: &str, k: Option<usize>) -> String {
    let mut s = String::new();
    write_tg(graph, &mut s).expect("writing to a String cannot fail");
    s.push_str(&format!("root {root}\n"));
    if let Some(k) = k {
        s.push_str(&format!("k {k}\n"));
    }
    s
}

fn arc_order_reproduces_labels(graph: &TemporalGraph) -> bool {
    let mut next = 0;
    let mut seen = vec![false; graph.vertex_count()];
    for a in graph.arcs() {
        for v in [a.tail, a.head] {
            if !seen[v] {
                if v != next {
                    return false;
                }
                seen[v] = true;
                next += 1;
            }
        }
    }
    next == graph.vertex_count()
}
