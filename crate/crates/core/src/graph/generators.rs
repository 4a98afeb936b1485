use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Names accepted by [`standard_graph`].
pub const GENERATOR_NAMES: &[&str] = &[
    "empty",
    "complete",
    "cycle",
    "path",
    "star",
    "bipartite",
    "matching",
    "wheel",
    "petersen",
    "friendship",
];

fn invalid(name: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn expect_params(name: &str, params: &[usize], count: usize) -> Result<()> {
    if params.len() != count {
        return Err(invalid(
            name,
            format!("expected {count} parameter(s), got {}", params.len()),
        ));
    }
    Ok(())
}

/// Builds a named graph with a fixed labeling:
///
/// * `empty n`, `complete n`: vertices `0..n`.
/// * `cycle n` (n >= 3): edges `{i, i+1 mod n}`.
/// * `path n`: edges `{i, i+1}`.
/// * `star d`: the star `K_{1,d}`, center `0`, leaves `1..=d`.
/// * `bipartite a b`: `K_{a,b}` with sides `0..a` and `a..a+b`.
/// * `matching k`: edges `{2i, 2i+1}` on `2k` vertices.
/// * `wheel d` (d >= 3): hub `0` joined to the cycle `1..=d`.
/// * `petersen`: outer cycle `0..5`, inner pentagram `5..10`, spokes `{i, i+5}`.
/// * `friendship k`: `k` triangles `{0, 2i+1, 2i+2}` sharing vertex `0`.
pub fn standard_graph(name: &str, params: &[usize]) -> Result<Graph> {
    match name {
        "empty" => {
            expect_params(name, params, 1)?;
            Graph::empty(params[0])
        }
        "complete" => {
            expect_params(name, params, 1)?;
            let n = params[0];
            let mut g = Graph::empty(n)?;
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        "cycle" => {
            expect_params(name, params, 1)?;
            let n = params[0];
            if n < 3 {
                return Err(invalid(name, "a cycle needs at least 3 vertices"));
            }
            let mut g = Graph::empty(n)?;
            for i in 0..n {
                g.add_edge(i, (i + 1) % n)?;
            }
            Ok(g)
        }
        "path" => {
            expect_params(name, params, 1)?;
            let n = params[0];
            let mut g = Graph::empty(n)?;
            for i in 1..n {
                g.add_edge(i - 1, i)?;
            }
            Ok(g)
        }
        "star" => {
            expect_params(name, params, 1)?;
            let d = params[0];
            let mut g = Graph::empty(d + 1)?;
            for leaf in 1..=d {
                g.add_edge(0, leaf)?;
            }
            Ok(g)
        }
        "bipartite" => {
            expect_params(name, params, 2)?;
            let (a, b) = (params[0], params[1]);
            let mut g = Graph::empty(a + b)?;
            for u in 0..a {
                for v in a..a + b {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        "matching" => {
            expect_params(name, params, 1)?;
            let k = params[0];
            let mut g = Graph::empty(2 * k)?;
            for i in 0..k {
                g.add_edge(2 * i, 2 * i + 1)?;
            }
            Ok(g)
        }
        "wheel" => {
            expect_params(name, params, 1)?;
            wheel_with_spokes(params[0], VertexSet::full(params[0]))
        }
        "petersen" => {
            expect_params(name, params, 0)?;
            let mut g = Graph::empty(10)?;
            for i in 0..5 {
                g.add_edge(i, (i + 1) % 5)?;
                g.add_edge(5 + i, 5 + (i + 2) % 5)?;
                g.add_edge(i, i + 5)?;
            }
            Ok(g)
        }
        "friendship" => {
            expect_params(name, params, 1)?;
            let k = params[0];
            let mut g = Graph::empty(2 * k + 1)?;
            for i in 0..k {
                g.add_edge(0, 2 * i + 1)?;
                g.add_edge(0, 2 * i + 2)?;
                g.add_edge(2 * i + 1, 2 * i + 2)?;
            }
            Ok(g)
        }
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

/// Wheel on a rim of `d` vertices. Bit `i` of `spokes` joins the hub to rim vertex `i + 1`.
pub fn wheel_with_spokes(d: usize, spokes: VertexSet) -> Result<Graph> {
    if d < 3 {
        return Err(invalid("wheel", "the rim needs at least 3 vertices"));
    }
    if let Some(bad) = spokes.difference(VertexSet::full(d)).first() {
        return Err(invalid("wheel", format!("spoke {bad} outside a rim of {d}")));
    }
    let mut g = Graph::empty(d + 1)?;
    for i in 0..d {
        g.add_edge(1 + i, 1 + (i + 1) % d)?;
        if spokes.contains(i) {
            g.add_edge(0, 1 + i)?;
        }
    }
    Ok(g)
}

/// Parses `name` or `name:p1,p2,...`, e.g. `cycle:5`, `bipartite:3,3`, `petersen`.
pub fn parse_generator(text: &str) -> Result<Graph> {
    let (name, params) = match text.split_once(':') {
        Some((name, rest)) => {
            let params = rest
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| invalid(name, format!("bad parameter `{p}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            (name, params)
        }
        None => (text, Vec::new()),
    };
    standard_graph(name.trim(), &params)
}
