//! graph6 text encoding.
//!
//! Every byte is in `63..=126`. The header encodes `n` (one byte `n + 63` for
//! `n < 63`, otherwise `126` and three 6-bit bytes), followed by the upper
//! triangle bits `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed six per byte,
//! most significant bit first, zero padded.

use std::path::{Path, PathBuf};

use super::Graph;
use crate::error::{Error, Result};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

fn sextet(byte: u8, pos: usize) -> Result<u8> {
    if !(63..=126).contains(&byte) {
        return Err(malformed(format!(
            "byte {byte:#04x} at offset {pos} is outside the printable range 63..=126"
        )));
    }
    Ok(byte - 63)
}

fn parse_header(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = *bytes.first().ok_or_else(|| malformed("empty input"))?;
    if first != 126 {
        return Ok((sextet(first, 0)? as usize, 1));
    }
    let (width, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    if bytes.len() < start + width {
        return Err(malformed("truncated size header"));
    }
    let mut n = 0usize;
    for (i, &b) in bytes[start..start + width].iter().enumerate() {
        n = n << 6 | sextet(b, start + i)? as usize;
    }
    Ok((n, start + width))
}

/// Decodes one graph6 record (no trailing newline; a trailing `\n` or `\r\n` is tolerated).
pub fn parse_graph6(input: &[u8]) -> Result<Graph> {
    let mut bytes = input;
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
    }
    let (n, offset) = parse_header(bytes)?;
    let mut g = Graph::empty(n)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[offset..];
    if body.len() < nbytes {
        return Err(malformed(format!(
            "truncated bit field: need {nbytes} bytes for n = {n}, found {}",
            body.len()
        )));
    }
    if body.len() > nbytes {
        return Err(malformed(format!(
            "{} trailing byte(s) after the bit field",
            body.len() - nbytes
        )));
    }
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = sextet(body[k / 6], offset + k / 6)?;
            if b >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let b = sextet(body[nbytes - 1], offset + nbytes - 1)?;
        if b & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Encodes a graph as one graph6 record without a trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        // Graph::MAX_VERTICES keeps n well inside the 3-byte form.
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decodes newline-separated graph6 records, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            parse_graph6(line.trim_end().as_bytes())
                .map_err(|e| malformed(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// An ordered list of graphs together with where they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphCorpus {
    pub graphs: Vec<Graph>,
    pub source: String,
}

impl GraphCorpus {
    pub fn new(graphs: Vec<Graph>, source: impl Into<String>) -> Self {
        GraphCorpus {
            graphs,
            source: source.into(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Ok(GraphCorpus::new(
            parse_graph6_lines(&text)?,
            path.display().to_string(),
        ))
    }

    /// One graph6 record per line, each newline terminated.
    pub fn to_graph6(&self) -> String {
        let mut s = String::new();
        for g in &self.graphs {
            s.push_str(&write_graph6(g));
            s.push('\n');
        }
        s
    }

    pub fn save(&self, path: impl Into<PathBuf>) -> Result<()> {
        std::fs::write(path.into(), self.to_graph6())?;
        Ok(())
    }
}
