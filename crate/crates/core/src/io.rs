//! Graph ingestion and emission: whitespace edge lists and DIMACS.
//!
//! Edge lists are one `u v` pair per line. Indexing is detected from the
//! smallest label: a file whose smallest label is 0 is zero-based, anything
//! else is one-based. Lines starting with `#` are comments, except that
//! `# n=<count>` pins the vertex count so trailing isolated vertices survive
//! a round trip. DIMACS uses `c` comments, one `p edge <n> <m>` header and
//! `e <u> <v>` lines with one-based labels.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, DEFAULT_MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// DIMACS if the first non-comment line is a `p` header, else edge list.
    pub fn sniff(text: &str) -> GraphFormat {
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') || t.starts_with("c ") || t == "c" {
                continue;
            }
            return if t.starts_with("p ") {
                GraphFormat::Dimacs
            } else {
                GraphFormat::EdgeList
            };
        }
        GraphFormat::EdgeList
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("graph has {n} vertices, above the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid graph: {0}")]
    Invalid(String),
}

pub fn parse(text: &str) -> Result<Graph, ParseError> {
    match GraphFormat::sniff(text) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn parse_label(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected a vertex label, found {tok:?}")))
}

fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, ParseError> {
    if n > DEFAULT_MAX_VERTICES {
        return Err(ParseError::TooLarge {
            n,
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    Graph::from_edges(n, edges).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut pinned_n = None;
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(comment) = t.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n=") {
                pinned_n = Some(parse_label(v.trim(), lineno)?);
            }
            continue;
        }
        let mut toks = t.split_whitespace();
        let (Some(u), Some(v), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(syntax(lineno, "expected exactly two labels"));
        };
        raw.push((parse_label(u, lineno)?, parse_label(v, lineno)?, lineno));
    }
    // with a pinned count the file was written by us, zero-based
    let min = raw.iter().map(|&(u, v, _)| u.min(v)).min();
    let offset = match (pinned_n, min) {
        (Some(_), _) | (None, Some(0)) | (None, None) => 0,
        (None, Some(_)) => 1,
    };
    let mut edges = Vec::with_capacity(raw.len());
    let mut max_label = None;
    for (u, v, lineno) in raw {
        if u < offset || v < offset {
            return Err(syntax(lineno, "label below the detected base"));
        }
        if u == v {
            return Err(syntax(lineno, format!("loop at vertex {u}")));
        }
        let (u, v) = (u - offset, v - offset);
        max_label = Some(max_label.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = match (pinned_n, max_label) {
        (Some(n), Some(m)) if m >= n => {
            return Err(ParseError::Invalid(format!(
                "label {m} does not fit the pinned vertex count {n}"
            )))
        }
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    build(n, &edges)
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t == "c" || t.starts_with("c ") || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks.as_slice() {
            ["p", kind, n, m] => {
                if header.is_some() {
                    return Err(syntax(lineno, "duplicate `p` header"));
                }
                if *kind != "edge" && *kind != "col" {
                    return Err(syntax(lineno, format!("unsupported problem kind {kind:?}")));
                }
                let n = parse_label(n, lineno)?;
                if n > DEFAULT_MAX_VERTICES {
                    return Err(ParseError::TooLarge {
                        n,
                        limit: DEFAULT_MAX_VERTICES,
                    });
                }
                header = Some((n, parse_label(m, lineno)?));
            }
            ["e", u, v] => {
                let Some((n, _)) = header else {
                    return Err(ParseError::MissingHeader);
                };
                let (u, v) = (parse_label(u, lineno)?, parse_label(v, lineno)?);
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(syntax(lineno, format!("edge ({u}, {v}) outside 1..={n}")));
                }
                if u == v {
                    return Err(syntax(lineno, format!("loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(syntax(lineno, format!("unrecognised line {t:?}"))),
        }
    }
    let (n, _) = header.ok_or(ParseError::MissingHeader)?;
    build(n, &edges)
}

pub fn write(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Dimacs => write_dimacs(g),
    }
}

/// Zero-based edge list with a `# n=` line pinning the vertex count.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_zero_and_one_based_edge_lists() {
        let zero = parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(zero, Graph::path(3));
        let one = parse_edge_list("1 2\n2 3\n").unwrap();
        assert_eq!(one, Graph::path(3));
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_vertices() {
        let mut g = Graph::empty(6);
        g.add_edge(0, 3);
        let text = write_edge_list(&g);
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::cycle(7);
        let text = write_dimacs(&g);
        assert_eq!(GraphFormat::sniff(&text), GraphFormat::Dimacs);
        assert_eq!(parse(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_with_comments() {
        let text = "c a comment\np edge 3 2\ne 1 2\ne 2 3\n";
        assert_eq!(parse(text).unwrap(), Graph::path(3));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 x\n").is_err());
        assert!(parse_edge_list("3 3\n").is_err());
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(ParseError::MissingHeader)));
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse("p edge 5000 0\n").is_err());
    }
}
