//! Text format for posets and lattices.
//!
//! Line 1 is the element count `n`; every following non-comment line is a
//! cover edge `u v` (0-indexed, meaning u ≺ v). Lines starting with `#` are
//! comments; blank lines are skipped. The order of the poset is the
//! reflexive-transitive closure of the listed edges, so redundant edges are
//! accepted and reduced. Cycles and out-of-range indices are rejected.

use crate::poset::{Poset, PosetError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing element count header")]
    MissingHeader,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub fn parse_poset(text: &str) -> Result<Poset, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if n.is_none() {
            n = Some(content.parse().map_err(|_| ParseError::Syntax {
                line,
                message: format!("expected element count, got {content:?}"),
            })?);
            continue;
        }
        let mut parts = content.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    message: format!("expected \"u v\", got {content:?}"),
                })
            }
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| ParseError::Syntax {
                line,
                message: format!("bad element index {s:?}"),
            })
        };
        edges.push((parse(u)?, parse(v)?));
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(Poset::from_cover_edges(n, &edges)?)
}

/// Serializes a poset as its cover edges. `parse_poset` of the output
/// reconstructs the same order.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", p.size()));
    for &(u, v) in p.covers() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
