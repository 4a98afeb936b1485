//! Brute-force isomorphism tooling: subgraph containment, canonical forms and
//! automorphisms. Only meant for graphs with a handful of vertices.

use super::{write_graph6, Graph, VertexSet};
use crate::error::{cap, Result};

pub const CONTAINS_PATTERN_CAP: usize = 8;
pub const CONTAINS_HOST_CAP: usize = 20;
pub const CANONICAL_CAP: usize = 9;
pub const TRANSITIVITY_CAP: usize = 10;

/// Pattern vertices in an order where each vertex (after the first of its
/// component) has an already placed neighbor, highest degree first.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = VertexSet::EMPTY;
    while order.len() < h.n() {
        let frontier: Vec<usize> = (0..h.n())
            .filter(|&v| !placed.contains(v) && !h.neighbors(v).is_disjoint(placed))
            .collect();
        let pool: Vec<usize> = if frontier.is_empty() {
            (0..h.n()).filter(|&v| !placed.contains(v)).collect()
        } else {
            frontier
        };
        let v = *pool
            .iter()
            .max_by_key(|&&v| (h.neighbors(v).intersection(placed).len(), h.degree(v), std::cmp::Reverse(v)))
            .expect("pool is nonempty");
        placed.insert(v);
        order.push(v);
    }
    order
}

fn embed_rec(
    h: &Graph,
    g: &Graph,
    within: VertexSet,
    order: &[usize],
    pos: usize,
    image: &mut [usize],
    used: VertexSet,
) -> bool {
    let Some(&hv) = order.get(pos) else {
        return true;
    };
    let mut candidates = within.difference(used);
    for &prev in &order[..pos] {
        if h.has_edge(hv, prev) {
            candidates = candidates.intersection(g.neighbors(image[prev]));
        }
    }
    let need = h.degree(hv);
    for gv in candidates.iter() {
        if g.degree_within(gv, within) < need {
            continue;
        }
        image[hv] = gv;
        if embed_rec(h, g, within, order, pos + 1, image, used.with(gv)) {
            return true;
        }
    }
    false
}

/// Is `h` a (not necessarily induced) subgraph of `G[within]`?
pub(crate) fn contains_subgraph_within(h: &Graph, g: &Graph, within: VertexSet) -> bool {
    if h.n() > within.len() || h.m() > g.edges_within(within) {
        return false;
    }
    let order = pattern_order(h);
    let mut image = vec![0; h.n()];
    embed_rec(h, g, within, &order, 0, &mut image, VertexSet::EMPTY)
}

/// True iff some injective map of `h`'s vertices into `g` carries edges to edges.
pub fn contains_subgraph(h: &Graph, g: &Graph) -> Result<bool> {
    cap("pattern vertex count", h.n(), CONTAINS_PATTERN_CAP)?;
    cap("host vertex count", g.n(), CONTAINS_HOST_CAP)?;
    Ok(contains_subgraph_within(h, g, g.vertices()))
}

struct CanonSearch<'a> {
    g: &'a Graph,
    total_bits: u32,
    order: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl CanonSearch<'_> {
    // Bits are accumulated most significant first, so numeric order on the
    // packed prefix equals lexicographic order of the graph6 body.
    fn dfs(&mut self, pos: usize, used: VertexSet, prefix: u64, len: u32) {
        let n = self.g.n();
        if pos == n {
            if self.best.as_ref().is_none_or(|(b, _)| prefix < *b) {
                self.best = Some((prefix, self.order.clone()));
            }
            return;
        }
        for v in VertexSet::full(n).difference(used).iter() {
            let mut col = 0u64;
            for i in 0..pos {
                col = col << 1 | self.g.has_edge(self.order[i], v) as u64;
            }
            let next = prefix << pos | col;
            let next_len = len + pos as u32;
            if let Some((best, _)) = &self.best {
                let best_prefix = best >> (self.total_bits - next_len);
                if next > best_prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.dfs(pos + 1, used.with(v), next, next_len);
            self.order.pop();
        }
    }
}

/// Vertex order (new position -> old vertex) giving the lexicographically
/// smallest graph6 string.
pub(crate) fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut search = CanonSearch {
        g,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        order: Vec::with_capacity(n),
        best: None,
    };
    search.dfs(0, VertexSet::EMPTY, 0, 0);
    search.best.map(|(_, order)| order).unwrap_or_default()
}

/// The minimum graph6 string over all vertex relabelings. Equal exactly for isomorphic graphs.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    cap("vertex count for canonical form", g.n(), CANONICAL_CAP)?;
    canonical_graph(g).map(|c| write_graph6(&c).into_bytes())
}

pub(crate) fn canonical_graph(g: &Graph) -> Result<Graph> {
    let order = canonical_order(g);
    let mut perm = vec![0; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    g.relabel(&perm)
}

fn automorphism_rec(g: &Graph, v: usize, image: &mut [Option<usize>], used: VertexSet) -> bool {
    let n = g.n();
    let Some(next) = (v..n).find(|&x| image[x].is_none()) else {
        return true;
    };
    for w in VertexSet::full(n).difference(used).iter() {
        if g.degree(w) != g.degree(next) {
            continue;
        }
        let consistent = (0..n).all(|x| match image[x] {
            Some(ix) => g.has_edge(next, x) == g.has_edge(w, ix),
            None => true,
        });
        if consistent {
            image[next] = Some(w);
            if automorphism_rec(g, next + 1, image, used.with(w)) {
                return true;
            }
            image[next] = None;
        }
    }
    false
}

/// An automorphism `perm` of `g` with `perm[u] == v`, if one exists.
pub fn automorphism_mapping(g: &Graph, u: usize, v: usize) -> Option<Vec<usize>> {
    if u >= g.n() || v >= g.n() || g.degree(u) != g.degree(v) {
        return None;
    }
    let mut image = vec![None; g.n()];
    image[u] = Some(v);
    automorphism_rec(g, 0, &mut image, VertexSet::singleton(v))
        .then(|| image.into_iter().map(|x| x.expect("complete map")).collect())
}

/// True iff the automorphism group acts transitively on the vertices.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    cap("vertex count for transitivity", g.n(), TRANSITIVITY_CAP)?;
    Ok((1..g.n()).all(|v| automorphism_mapping(g, 0, v).is_some()))
}
