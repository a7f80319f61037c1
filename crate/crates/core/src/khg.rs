//! The `.khg` text format.
//!
//! First data line is the header `k n`. Every further data line is one edge
//! given as strictly ascending, space-separated, 0-based vertex indices.
//! Blank lines are skipped and everything from `#` to the end of a line is a
//! comment. Serialisation is canonical (edges in ascending bitmask order),
//! and parsing a canonical file followed by serialising reproduces the input
//! byte for byte.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Non-fatal parser diagnostics. Currently only duplicate edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Tokens of one line with their 1-based starting columns, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let data = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut out = Vec::new();
    let mut col = 1usize;
    let mut start = None;
    for (i, ch) in data.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((col, &data[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
            col = i + 1;
        }
    }
    if let Some(s) = start {
        out.push((col, &data[s..]));
    }
    out
}

pub fn parse_str(input: &str) -> Result<(Hypergraph, Vec<ParseWarning>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut seen: Vec<VertexSet> = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        match header {
            None => {
                if toks.len() != 2 {
                    return Err(parse_err(
                        lineno,
                        toks[0].0,
                        format!("header must be `k n`, found {} token(s)", toks.len()),
                    ));
                }
                let k: usize = toks[0]
                    .1
                    .parse()
                    .map_err(|_| parse_err(lineno, toks[0].0, "invalid uniformity k"))?;
                let n: usize = toks[1]
                    .1
                    .parse()
                    .map_err(|_| parse_err(lineno, toks[1].0, "invalid vertex count n"))?;
                if n > crate::MAX_VERTICES {
                    return Err(parse_err(
                        lineno,
                        toks[1].0,
                        format!("n = {n} exceeds the capacity of 64"),
                    ));
                }
                if k < 2 {
                    return Err(parse_err(lineno, toks[0].0, "k must be at least 2"));
                }
                header = Some((k, n));
            }
            Some((k, n)) => {
                if toks.len() != k {
                    return Err(parse_err(
                        lineno,
                        toks[0].0,
                        format!("edge has {} vertices, expected {k}", toks.len()),
                    ));
                }
                let mut mask = 0u64;
                let mut prev: Option<usize> = None;
                for (col, tok) in &toks {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, *col, "invalid vertex index"))?;
                    if v >= n {
                        return Err(parse_err(
                            lineno,
                            *col,
                            format!("vertex {v} out of range [0, {n})"),
                        ));
                    }
                    if let Some(p) = prev {
                        if v <= p {
                            return Err(parse_err(
                                lineno,
                                *col,
                                "vertex indices must be strictly ascending",
                            ));
                        }
                    }
                    prev = Some(v);
                    mask |= 1 << v;
                }
                let e = VertexSet::from_mask(mask);
                if seen.binary_search(&e).is_ok() {
                    warnings.push(ParseWarning {
                        line: lineno,
                        msg: format!("duplicate edge {e} ignored"),
                    });
                } else {
                    let pos = seen.binary_search(&e).unwrap_err();
                    seen.insert(pos, e);
                    edges.push(e);
                }
            }
        }
    }

    let (k, n) = header.ok_or_else(|| parse_err(1, 1, "missing `k n` header"))?;
    let h = Hypergraph::new(n, k, edges)?;
    Ok((h, warnings))
}

/// Canonical text form: header, then edges in ascending bitmask order.
pub fn serialize(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.k(), h.n());
    for e in h.edges() {
        let verts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_file(path: impl AsRef<Path>) -> Result<(Hypergraph, Vec<ParseWarning>)> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text)
}

pub fn write_file(path: impl AsRef<Path>, h: &Hypergraph) -> Result<()> {
    std::fs::write(path, serialize(h))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::subsets_of_size;

    #[test]
    fn canonical_round_trip_is_identity() {
        let edges: Vec<VertexSet> = subsets_of_size(6, 3).step_by(2).collect();
        let h = Hypergraph::new(6, 3, edges).unwrap();
        let text = serialize(&h);
        let (back, warnings) = parse_str(&text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(back, h);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a comment\n\n4 8  # header\n0 1 2 3\n\n# trailing\n2 3 4 5\n";
        let (h, warnings) = parse_str(text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(h.k(), 4);
        assert_eq!(h.n(), 8);
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn duplicate_edge_warns_and_dedupes() {
        let text = "3 5\n0 1 2\n0 1 2\n";
        let (h, warnings) = parse_str(text).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 3);
    }

    #[test]
    fn wrong_edge_size_reports_line() {
        let text = "4 8\n0 1 2\n";
        match parse_str(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_ascending_rejected() {
        let text = "3 6\n2 1 4\n";
        match parse_str(text) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 3);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        let text = "3 5\n0 1 5\n";
        assert!(matches!(parse_str(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_header_rejected() {
        assert!(matches!(parse_str("# nothing\n"), Err(Error::Parse { .. })));
    }
}
