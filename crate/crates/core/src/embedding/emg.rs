//! The line-oriented EMG text format.
//!
//! ```text
//! emg 1
//! vertices <n>
//! rings <k>
//! ring <len> v0 v1 ...
//! rot <v>: u0 u1 ...
//! ```
//!
//! Lines starting with `#` are comments. A stream holds several records
//! separated by blank lines.

use std::fmt::Write as _;

use thiserror::Error;

use super::{EmbeddedGraph, EmbeddingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmgError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid embedding: {0}")]
    Embedding(#[from] EmbeddingError),
}

fn syntax(line: usize, msg: impl Into<String>) -> EmgError {
    EmgError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Serialises a graph. Output is stable for a given value.
pub fn write_emg(g: &EmbeddedGraph) -> String {
    let mut s = String::new();
    s.push_str("emg 1\n");
    let _ = writeln!(s, "vertices {}", g.vertex_count());
    let _ = writeln!(s, "rings {}", g.rings().len());
    for r in g.rings() {
        let _ = write!(s, "ring {}", r.len());
        for v in r {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    for v in 0..g.vertex_count() {
        let _ = write!(s, "rot {v}:");
        for u in g.rotation(v) {
            let _ = write!(s, " {u}");
        }
        s.push('\n');
    }
    s
}

/// Serialises several graphs as a blank-line separated stream.
pub fn write_emg_stream<'a>(graphs: impl IntoIterator<Item = &'a EmbeddedGraph>) -> String {
    graphs
        .into_iter()
        .map(write_emg)
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, EmgError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, got {tok:?}")))
}

/// Parses exactly one record; trailing blank lines are allowed, anything
/// else after the last rotation line is an error.
pub fn parse_emg(text: &str) -> Result<EmbeddedGraph, EmgError> {
    let mut records = parse_records(text)?;
    match records.len() {
        1 => Ok(records.pop().unwrap()),
        0 => Err(syntax(1, "empty input")),
        _ => Err(syntax(1, "trailing data after the first record")),
    }
}

/// Parses a stream of records separated by blank lines.
pub fn parse_emg_stream(text: &str) -> Result<Vec<EmbeddedGraph>, EmgError> {
    parse_records(text)
}

fn parse_records(text: &str) -> Result<Vec<EmbeddedGraph>, EmgError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#'))
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    loop {
        while i < lines.len() && lines[i].1.trim().is_empty() {
            i += 1;
        }
        if i >= lines.len() {
            break;
        }
        let (g, used) = parse_one(&lines[i..])?;
        out.push(g);
        i += used;
        if i < lines.len() && !lines[i].1.trim().is_empty() {
            return Err(syntax(lines[i].0, "trailing garbage after record"));
        }
    }
    Ok(out)
}

fn parse_one(lines: &[(usize, &str)]) -> Result<(EmbeddedGraph, usize), EmgError> {
    let mut idx = 0;
    let mut next = |what: &str| -> Result<(usize, Vec<&str>), EmgError> {
        let Some(&(no, l)) = lines.get(idx) else {
            let last = lines.last().map(|x| x.0).unwrap_or(0);
            return Err(syntax(last, format!("unexpected end of input, expected {what}")));
        };
        idx += 1;
        Ok((no, l.split_whitespace().collect()))
    };
    let (no, toks) = next("header")?;
    if toks != ["emg", "1"] {
        return Err(syntax(no, "expected header `emg 1`"));
    }
    let (no, toks) = next("vertex count")?;
    if toks.len() != 2 || toks[0] != "vertices" {
        return Err(syntax(no, "expected `vertices <n>`"));
    }
    let n = parse_usize(toks[1], no)?;
    let (no, toks) = next("ring count")?;
    if toks.len() != 2 || toks[0] != "rings" {
        return Err(syntax(no, "expected `rings <k>`"));
    }
    let k = parse_usize(toks[1], no)?;
    if k > 2 {
        return Err(syntax(no, "at most two rings"));
    }
    let mut rings = Vec::with_capacity(k);
    for _ in 0..k {
        let (no, toks) = next("ring line")?;
        if toks.len() < 2 || toks[0] != "ring" {
            return Err(syntax(no, "expected `ring <len> v0 ...`"));
        }
        let len = parse_usize(toks[1], no)?;
        if toks.len() != len + 2 {
            return Err(syntax(no, "ring length does not match vertex list"));
        }
        let ring = toks[2..]
            .iter()
            .map(|t| parse_usize(t, no))
            .collect::<Result<Vec<_>, _>>()?;
        rings.push(ring);
    }
    let mut rotations = Vec::with_capacity(n);
    for v in 0..n {
        let (no, toks) = next("rotation line")?;
        if toks.len() < 2 || toks[0] != "rot" || toks[1] != format!("{v}:") {
            return Err(syntax(no, format!("expected `rot {v}: ...`")));
        }
        let rot = toks[2..]
            .iter()
            .map(|t| parse_usize(t, no))
            .collect::<Result<Vec<_>, _>>()?;
        rotations.push(rot);
    }
    Ok((EmbeddedGraph::new(rotations, rings)?, idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRISM: &str = "emg 1
vertices 6
rings 2
ring 3 0 1 2
ring 3 3 5 4
rot 0: 1 3 2
rot 1: 2 4 0
rot 2: 0 5 1
rot 3: 0 4 5
rot 4: 1 5 3
rot 5: 2 3 4
";

    #[test]
    fn parses_and_round_trips() {
        let g = parse_emg(PRISM).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.rings().len(), 2);
        let text = write_emg(&g);
        assert_eq!(write_emg(&parse_emg(&text).unwrap()), text);
    }

    #[test]
    fn comments_are_skipped() {
        let text = format!("# prism\n{PRISM}");
        assert!(parse_emg(&text).is_ok());
    }

    #[test]
    fn rejects_trailing_garbage() {
        let text = format!("{PRISM}junk\n");
        assert!(parse_emg(&text).is_err());
        let text = format!("{PRISM}\n{PRISM}");
        assert!(parse_emg(&text).is_err());
        assert_eq!(parse_emg_stream(&text).unwrap().len(), 2);
    }

    #[test]
    fn rejects_bad_header_and_counts() {
        assert!(parse_emg("emg 2\nvertices 0\nrings 0\n").is_err());
        assert!(parse_emg("emg 1\nvertices 1\nrings 0\n").is_err());
        assert!(parse_emg("emg 1\nvertices 1\nrings 0\nrot 0: x\n").is_err());
        assert!(parse_emg("emg 1\nvertices 1\nrings 0\nrot 0:\n").is_ok());
    }
}
