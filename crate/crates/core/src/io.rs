//! Text formats for graphs and colorings.
//!
//! Graphs use a DIMACS-style edge format:
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! l <u> <tag>
//! e <u> <v>
//! ```
//!
//! Endpoints are 1-based. The writer emits the `p` line, then labels by
//! ascending vertex, then edges with `u < v` in lexicographic order, so
//! write-read-write is byte-identical.
//!
//! Colorings are `v<id> <color>` lines (0-based ids, ascending), optionally
//! preceded by `k <palette size>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{Color, ColoringMap};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(
    line: usize,
    token: Option<&str>,
    what: &str,
) -> Result<T, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

/// Parses the graph format. Disconnected graphs are rejected unless
/// `allow_disconnected` is set.
pub fn read_graph(text: &str, allow_disconnected: bool) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut labels = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(lineno, "duplicate `p` line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(syntax(lineno, "expected `p edge <n> <m>`"));
                }
                let n = parse_num(lineno, tokens.next(), "vertex count")?;
                let m = parse_num(lineno, tokens.next(), "edge count")?;
                header = Some((n, m));
            }
            Some(kind @ ("e" | "l")) => {
                let (n, _) = header.ok_or_else(|| syntax(lineno, "`p` line must come first"))?;
                let u: usize = parse_num(lineno, tokens.next(), "vertex")?;
                if u == 0 || u > n {
                    return Err(syntax(lineno, format!("vertex {u} outside 1..={n}")));
                }
                if kind == "e" {
                    let v: usize = parse_num(lineno, tokens.next(), "vertex")?;
                    if v == 0 || v > n {
                        return Err(syntax(lineno, format!("vertex {v} outside 1..={n}")));
                    }
                    if tokens.next().is_some() {
                        return Err(syntax(lineno, "trailing tokens"));
                    }
                    edges.push((u - 1, v - 1));
                } else {
                    let tag = line[1..].trim_start();
                    let tag = tag[tag.find(char::is_whitespace).unwrap_or(tag.len())..].trim();
                    if tag.is_empty() {
                        return Err(syntax(lineno, "label line without a tag"));
                    }
                    labels.insert(u - 1, tag.to_string());
                }
            }
            Some(other) => return Err(syntax(lineno, format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    let mut g = if allow_disconnected {
        Graph::from_edges_unchecked_connectivity(n, &edges)?
    } else {
        Graph::from_edges(n, &edges)?
    };
    g.set_labels(labels);
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.order(), g.size()).unwrap();
    for (v, tag) in g.labels() {
        writeln!(out, "l {} {}", v + 1, tag).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_coloring(c: &ColoringMap) -> String {
    let mut out = String::new();
    for (v, color) in c.colors().iter().enumerate() {
        writeln!(out, "v{v} {color}").unwrap();
    }
    out
}

/// Parses a coloring file. The palette size comes from a `k` line when
/// present and from the largest color otherwise.
pub fn read_coloring(text: &str) -> Result<ColoringMap, ParseError> {
    let mut palette: Option<usize> = None;
    let mut colors: Vec<Color> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap();
        if head == "k" {
            palette = Some(parse_num(lineno, tokens.next(), "palette size")?);
            continue;
        }
        let id: Vertex = head
            .strip_prefix('v')
            .ok_or_else(|| syntax(lineno, format!("expected `v<id> <color>`, got `{head}`")))
            .and_then(|id| parse_num(lineno, Some(id), "vertex id"))?;
        if id != colors.len() {
            return Err(syntax(
                lineno,
                format!("expected vertex v{}, got v{id}", colors.len()),
            ));
        }
        colors.push(parse_num(lineno, tokens.next(), "color")?);
        if tokens.next().is_some() {
            return Err(syntax(lineno, "trailing tokens"));
        }
    }
    let k = palette.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(0) as usize);
    Ok(ColoringMap::new(colors, k))
}
