use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use nodequery::graph::{parse_generator, parse_graph6, parse_graph6_lines, GENERATOR_NAMES};
use nodequery::{Graph, PropertySpec, VertexSet};

pub const CORPUS_DIR_ENV: &str = "NODEQUERY_CORPUS_DIR";

/// `@file`, `generator[:params]` or a graph6 string.
pub fn graph(text: &str) -> Result<Graph> {
    if let Some(path) = text.strip_prefix('@') {
        let body = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let mut graphs = parse_graph6_lines(&body)?;
        if graphs.len() != 1 {
            bail!("{path}: expected exactly one graph6 line, found {}", graphs.len());
        }
        return Ok(graphs.remove(0));
    }
    let head = text.split(':').next().unwrap_or_default();
    if GENERATOR_NAMES.contains(&head) {
        return Ok(parse_generator(text)?);
    }
    Ok(parse_graph6(text.trim().as_bytes())?)
}

pub fn property(text: &str) -> Result<PropertySpec> {
    Ok(PropertySpec::resolve(text)?)
}

/// Decimal, `0x` hex or `0b` binary bitmask.
pub fn subset(text: &str, n: usize) -> Result<VertexSet> {
    let t = text.trim();
    let bits = if let Some(h) = t.strip_prefix("0x") {
        u64::from_str_radix(h, 16)
    } else if let Some(b) = t.strip_prefix("0b") {
        u64::from_str_radix(b, 2)
    } else {
        t.parse()
    }
    .with_context(|| format!("bad subset bitmask `{text}`"))?;
    let s = VertexSet::from_bits(bits);
    s.check_within(n)?;
    Ok(s)
}

/// Sets separated by `;`, vertices by `,` (`0,1;2,3`), or `@file` with one set per line.
pub fn family(text: &str) -> Result<Vec<VertexSet>> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => text.replace(';', "\n"),
    };
    body.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            line.split([',', ' '])
                .filter(|v| !v.is_empty())
                .map(|v| {
                    let v: usize = v.parse().with_context(|| format!("bad element `{v}`"))?;
                    VertexSet::from_vertices(64, [v]).map_err(Into::into)
                })
                .try_fold(VertexSet::EMPTY, |acc, v: Result<VertexSet>| Ok(acc.union(v?)))
        })
        .collect()
}

/// An existing path as given, otherwise the same name under the corpus directory.
pub fn corpus_path(arg: &Path) -> PathBuf {
    if arg.exists() {
        return arg.to_path_buf();
    }
    match std::env::var_os(CORPUS_DIR_ENV) {
        Some(dir) if arg.is_relative() => Path::new(&dir).join(arg),
        _ => arg.to_path_buf(),
    }
}

/// `graphs<n>.g6` in the corpus directory, if present.
pub fn default_corpus(n: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CORPUS_DIR_ENV)?;
    let path = Path::new(&dir).join(format!("graphs{n}.g6"));
    path.exists().then_some(path)
}
