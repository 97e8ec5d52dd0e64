//! Text formats for graphs and networks.
//!
//! `.wgr` (weighted multigraph):
//! ```text
//! n m
//! id weight      // n lines; weight is a positive decimal or `inf`
//! u v            // m lines; repeated lines are parallel edges, u = v a self-loop
//! ```
//!
//! `.bn` (Bayesian network DAG):
//! ```text
//! n m
//! id domain_size // n lines; domain_size >= 2
//! parent child   // m lines
//! ```
//!
//! Tokens are whitespace-separated; `#` starts a comment line. Writers emit
//! a canonical ordering so identical values serialize to identical bytes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bayes::BayesianDag;
use crate::graph::{VertexId, Weight, WeightedMultigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{}{message}", .line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based input line, when the problem is attributable to one.
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn whole_file(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

/// Content lines (line number, tokens), with blanks and `#` comments skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        Some((i + 1, trimmed.split_whitespace().collect()))
    })
}

fn parse_counts<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<(usize, usize), ParseError> {
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| ParseError::whole_file("empty input"))?;
    let [n, m] = tokens.as_slice() else {
        return Err(ParseError::at(line, "expected `n m`"));
    };
    let parse = |tok: &str| {
        tok.parse::<usize>()
            .map_err(|_| ParseError::at(line, format!("invalid count `{tok}`")))
    };
    Ok((parse(n)?, parse(m)?))
}

fn parse_id(token: &str, line: usize) -> Result<VertexId, ParseError> {
    token
        .parse::<u32>()
        .map(VertexId)
        .map_err(|_| ParseError::at(line, format!("invalid vertex id `{token}`")))
}

pub fn parse_wgr(text: &str) -> Result<WeightedMultigraph, ParseError> {
    let mut lines = content_lines(text);
    let (n, m) = parse_counts(&mut lines)?;
    let mut graph = WeightedMultigraph::new();
    for _ in 0..n {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| ParseError::whole_file("missing vertex lines"))?;
        let [id, weight] = tokens.as_slice() else {
            return Err(ParseError::at(line, "expected `id weight`"));
        };
        let id = parse_id(id, line)?;
        let weight = if *weight == "inf" {
            Weight::Unselectable
        } else {
            weight
                .parse::<f64>()
                .ok()
                .and_then(Weight::finite)
                .ok_or_else(|| {
                    ParseError::at(line, format!("weight `{weight}` is not positive finite or `inf`"))
                })?
        };
        graph
            .add_vertex(id, weight)
            .map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    for _ in 0..m {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| ParseError::whole_file("missing edge lines"))?;
        let [u, v] = tokens.as_slice() else {
            return Err(ParseError::at(line, "expected `u v`"));
        };
        graph
            .add_edge(parse_id(u, line)?, parse_id(v, line)?)
            .map_err(|e| ParseError::at(line, e.to_string()))?;
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::at(line, "trailing content after declared lines"));
    }
    Ok(graph)
}

pub fn write_wgr(g: &WeightedMultigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (v, w) in g.vertices() {
        let _ = writeln!(out, "{v} {w}");
    }
    for (u, v, mult) in g.edges() {
        for _ in 0..mult {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}

pub fn parse_bn(text: &str) -> Result<BayesianDag, ParseError> {
    let mut lines = content_lines(text);
    let (n, m) = parse_counts(&mut lines)?;
    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| ParseError::whole_file("missing vertex lines"))?;
        let [id, domain] = tokens.as_slice() else {
            return Err(ParseError::at(line, "expected `id domain_size`"));
        };
        let domain: u32 = domain
            .parse()
            .map_err(|_| ParseError::at(line, format!("invalid domain size `{domain}`")))?;
        if domain < 2 {
            return Err(ParseError::at(line, "domain size must be at least 2"));
        }
        vertices.push((parse_id(id, line)?, domain));
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| ParseError::whole_file("missing edge lines"))?;
        let [parent, child] = tokens.as_slice() else {
            return Err(ParseError::at(line, "expected `parent child`"));
        };
        edges.push((parse_id(parent, line)?, parse_id(child, line)?));
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::at(line, "trailing content after declared lines"));
    }
    BayesianDag::new(vertices, edges).map_err(|e| ParseError::whole_file(e.to_string()))
}

pub fn write_bn(d: &BayesianDag) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", d.vertex_count(), d.edge_count());
    for (v, domain) in d.vertices() {
        let _ = writeln!(out, "{v} {domain}");
    }
    for (parent, child) in d.edges() {
        let _ = writeln!(out, "{parent} {child}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wgr_round_trip() {
        let text = "# weighted graph\n3 4\n0 1.5\n1 inf\n2 3\n0 1\n0 1\n1 2\n2 2\n";
        let g = parse_wgr(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.weight(VertexId(1)).unwrap(), Weight::Unselectable);
        assert_eq!(g.edge_multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(g.self_loops(VertexId(2)), 1);
        let written = write_wgr(&g);
        assert_eq!(parse_wgr(&written).unwrap(), g);
        assert_eq!(write_wgr(&parse_wgr(&written).unwrap()), written);
    }

    #[test]
    fn wgr_rejects_bad_weights() {
        for bad in ["0", "-2", "nan", "infinity", "x"] {
            let text = format!("1 0\n0 {bad}\n");
            assert!(parse_wgr(&text).is_err(), "weight `{bad}` accepted");
        }
    }

    #[test]
    fn wgr_rejects_unknown_edge_endpoint() {
        let err = parse_wgr("1 1\n0 1\n0 7\n").unwrap_err();
        assert_eq!(err.line, Some(3));
    }

    #[test]
    fn wgr_rejects_trailing_lines() {
        assert!(parse_wgr("1 0\n0 1\n0 1\n").is_err());
    }

    #[test]
    fn bn_round_trip() {
        let text = "# network\n3 2\n0 2\n1 3\n2 4\n0 1\n1 2\n";
        let d = parse_bn(text).unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.edge_count(), 2);
        let written = write_bn(&d);
        assert_eq!(parse_bn(&written).unwrap(), d);
    }

    #[test]
    fn bn_rejects_cycles_domains_and_duplicates() {
        assert!(parse_bn("2 2\n0 2\n1 2\n0 1\n1 0\n").is_err());
        assert!(parse_bn("1 0\n0 1\n").is_err());
        assert!(parse_bn("2 2\n0 2\n1 2\n0 1\n0 1\n").is_err());
    }
}
