//! Canonical edge-list serialization.
//!
//! Text form: a header line `n m`, then `m` lines `u v` or `u v w`,
//! whitespace separated and 0-indexed. Lines whose first non-blank
//! character is `#` are comments. Output always writes `u < v` in
//! lexicographic order and emits weights only for weighted graphs.

use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            weights: (!g.is_unit_weighted()).then(|| g.weights().to_vec()),
        }
    }
}

impl EdgeList {
    pub fn to_graph(&self) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, &pairs, self.weights.as_deref())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_field<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Parses the text edge-list format into a graph.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n: usize = parse_field(head[0], hline, "vertex count")?;
    let m: usize = parse_field(head[1], hline, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(parse_err(line, "edge line must be `u v` or `u v w`"));
        }
        let u: usize = parse_field(toks[0], line, "vertex")?;
        let v: usize = parse_field(toks[1], line, "vertex")?;
        let w: f64 = match toks.get(2) {
            Some(t) => parse_field(t, line, "weight")?,
            None => 1.0,
        };
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        if !(w > 0.0) || !w.is_finite() {
            return Err(parse_err(line, format!("weight {w} is not strictly positive")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge {{{u}, {v}}}")));
        }
        edges.push((u, v));
        weights.push(w);
    }
    if edges.len() != m {
        return Err(parse_err(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges, Some(&weights))
}

/// Writes the canonical text form of `g`.
pub fn write_edge_list(g: &Graph) -> String {
    let weighted = !g.is_unit_weighted();
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v, w) in g.weighted_edges() {
        if weighted {
            let _ = writeln!(out, "{u} {v} {w}");
        } else {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}
