//! Graph file formats.
//!
//! Edge list:
//!
//! ```text
//! # comment
//! n 4
//! 1 3
//! 3 1
//! ```
//!
//! The optional `n <N>` header must precede the first arc; without it the
//! vertex count is the largest label. JSON: `{"n": 4, "arcs": [[1, 3], [3, 1]]}`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: Some(line),
        msg: msg.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 {
                return Err(parse_err(lineno, "header must be `n <N>`"));
            }
            if n.is_some() {
                return Err(parse_err(lineno, "repeated `n` header"));
            }
            if !arcs.is_empty() {
                return Err(parse_err(lineno, "`n` header must precede the arcs"));
            }
            let v: usize = fields[1]
                .parse()
                .map_err(|_| parse_err(lineno, format!("invalid vertex count {:?}", fields[1])))?;
            if v == 0 {
                return Err(parse_err(lineno, "vertex count must be positive"));
            }
            n = Some(v);
            continue;
        }
        if fields.len() != 2 {
            return Err(parse_err(lineno, format!("expected `u v`, got {line:?}")));
        }
        let parse_v = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(parse_err(lineno, format!("invalid vertex {s:?}"))),
            }
        };
        let (u, v) = (parse_v(fields[0])?, parse_v(fields[1])?);
        if u == v {
            return Err(parse_err(lineno, format!("self-loop at vertex {u}")));
        }
        if let Some(n) = n {
            if u > n || v > n {
                return Err(parse_err(lineno, format!("arc ({u}, {v}) exceeds n = {n}")));
            }
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(lineno, format!("duplicate arc ({u}, {v})")));
        }
        arcs.push((u, v));
    }

    let n = match n {
        Some(n) => n,
        None => arcs
            .iter()
            .map(|&(u, v)| u.max(v))
            .max()
            .ok_or_else(|| Error::Parse {
                line: None,
                msg: "empty graph without `n` header".into(),
            })?,
    };
    Digraph::new(n, arcs)
}

pub fn emit_edge_list(d: &Digraph) -> String {
    let mut out = format!("n {}\n", d.n());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    arcs: Vec<(i64, i64)>,
}

/// 1-based line of the `k`-th innermost `[` … `]` pair inside the `arcs`
/// array, found by scanning the source text.
fn arc_line(text: &str, k: usize) -> Option<usize> {
    let start = text.find("\"arcs\"")?;
    let mut depth = 0usize;
    let mut count = 0usize;
    for (off, ch) in text[start..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if count == k {
                        return Some(text[..start + off].matches('\n').count() + 1);
                    }
                    count += 1;
                }
            }
            ']' => {
                if depth == 1 {
                    return None;
                }
                depth = depth.saturating_sub(1);
            }
            _ => {}
        }
    }
    None
}

pub fn parse_json(text: &str) -> Result<Digraph> {
    let g: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: Some(e.line()),
        msg: e.to_string(),
    })?;
    if g.n == 0 {
        return Err(Error::Parse {
            line: None,
            msg: "vertex count must be positive".into(),
        });
    }
    let mut seen = BTreeSet::new();
    let mut arcs = Vec::with_capacity(g.arcs.len());
    for (k, &(u, v)) in g.arcs.iter().enumerate() {
        let fail = |msg: String| Error::Parse {
            line: arc_line(text, k),
            msg: format!("arc #{k}: {msg}"),
        };
        if u < 1 || v < 1 || u as usize > g.n || v as usize > g.n {
            return Err(fail(format!("({u}, {v}) outside 1..={}", g.n)));
        }
        if u == v {
            return Err(fail(format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u, v)) {
            return Err(fail(format!("duplicate arc ({u}, {v})")));
        }
        arcs.push((u as usize, v as usize));
    }
    Digraph::new(g.n, arcs)
}

/// One arc per line, so that diffs and error line numbers stay readable.
pub fn emit_json(d: &Digraph) -> String {
    let mut out = format!("{{\n  \"n\": {},\n  \"arcs\": [", d.n());
    let arcs: Vec<String> = d.arcs().map(|(u, v)| format!("\n    [{u}, {v}]")).collect();
    out.push_str(&arcs.join(","));
    if !arcs.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Edges,
    Json,
}

pub fn parse(text: &str, format: GraphFormat) -> Result<Digraph> {
    match format {
        GraphFormat::Edges => parse_edge_list(text),
        GraphFormat::Json => parse_json(text),
    }
}

pub fn emit(d: &Digraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edges => emit_edge_list(d),
        GraphFormat::Json => emit_json(d),
    }
}
