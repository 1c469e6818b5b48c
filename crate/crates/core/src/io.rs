//! Text (`.hg`) and JSON encodings of [`Hypergraph`].
//!
//! `.hg` layout: a header line `n m`, then `m` lines each listing one edge's
//! vertices in strictly ascending order. Lines starting with `#` and blank
//! lines are ignored anywhere in the file.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("line {line}: edge vertices must be strictly ascending")]
    NotAscending { line: usize },
    #[error(transparent)]
    Invalid(#[from] HypergraphError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<u64>, ParseError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| ParseError::Syntax {
                line: lineno,
                msg: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}

/// Parses the `.hg` text format.
pub fn parse_hg(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let header = parse_numbers(header, hline)?;
    let [n, m] = header[..] else {
        return Err(ParseError::Syntax {
            line: hline,
            msg: format!("header must be `n m`, found {} numbers", header.len()),
        });
    };
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let members = parse_numbers(line, lineno)?;
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParseError::NotAscending { line: lineno });
        }
        edges.push(members);
    }
    if edges.len() as u64 != m {
        return Err(ParseError::EdgeCount {
            declared: m as usize,
            found: edges.len(),
        });
    }
    Ok(Hypergraph::new(n as usize, edges)?)
}

/// Canonical `.hg` text, newline terminated.
pub fn to_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for e in h.edges() {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

/// One-line `.hg` form: `n m | e1 | e2 ...`, used for witnesses in reports.
pub fn to_inline(h: &Hypergraph) -> String {
    let mut out = format!("{} {}", h.n(), h.edge_count());
    for e in h.edges() {
        out.push_str(" | ");
        out.push_str(&e.to_string());
    }
    out
}

/// Parses the one-line form produced by [`to_inline`].
pub fn parse_inline(text: &str) -> Result<Hypergraph, ParseError> {
    parse_hg(&text.split('|').collect::<Vec<_>>().join("\n"))
}

#[derive(Serialize, Deserialize)]
struct JsonRepr {
    n: usize,
    edges: Vec<Vec<u64>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonRepr {
            n: self.n(),
            edges: self
                .edges()
                .iter()
                .map(|e| e.members().iter().map(|&v| v as u64).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = JsonRepr::deserialize(d)?;
        if let Some(i) = repr.edges.iter().position(|e| e.windows(2).any(|w| w[0] >= w[1])) {
            return Err(serde::de::Error::custom(format!(
                "edge {i}: vertices must be strictly ascending"
            )));
        }
        Hypergraph::new(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Parses `{"n": int, "edges": [[int, ...], ...]}`.
pub fn parse_json(text: &str) -> Result<Hypergraph, ParseError> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_json(h: &Hypergraph) -> String {
    serde_json::to_string(h).expect("hypergraph serialization is infallible")
}

/// Detects JSON by a leading `{`, otherwise parses `.hg`.
pub fn parse_auto(text: &str) -> Result<Hypergraph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_hg(text)
    }
}
