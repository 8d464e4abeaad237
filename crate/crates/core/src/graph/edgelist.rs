//! Plain-text edge lists: a header line `n m`, then `m` lines `u v length`.
//! Lines starting with `#` are comments. Lengths are written with Rust's
//! shortest round-tripping float formatting, so write/parse is lossless.

use std::fmt::Write as _;
use std::path::Path;

use super::{Edge, WeightedMultigraph};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<WeightedMultigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "expected header `n m`"));
                }
                let n = fields[0]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad vertex count `{}`", fields[0])))?;
                let m = fields[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad edge count `{}`", fields[1])))?;
                header = Some((n, m));
                edges.reserve(m);
            }
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(parse_err(line_no, format!("more than the declared {m} edges")));
                }
                if fields.len() != 3 {
                    return Err(parse_err(line_no, "expected `u v length`"));
                }
                let u: usize = fields[0]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad vertex id `{}`", fields[0])))?;
                let v: usize = fields[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad vertex id `{}`", fields[1])))?;
                let length: f64 = fields[2]
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad length `{}`", fields[2])))?;
                if u >= n || v >= n {
                    return Err(parse_err(line_no, format!("vertex out of range for n = {n}")));
                }
                if !(length > 0.0 && length.is_finite()) {
                    return Err(parse_err(
                        line_no,
                        format!("edge {} has invalid length {length}", edges.len()),
                    ));
                }
                edges.push(Edge { u, v, length });
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing header `n m`"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    WeightedMultigraph::from_edges(n, edges)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<WeightedMultigraph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Serializes `g`; each entry of `comments` becomes a leading `# ...` line.
pub fn write_edge_list(g: &WeightedMultigraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.length);
    }
    out
}
