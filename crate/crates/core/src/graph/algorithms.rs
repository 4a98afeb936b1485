//! Exact classical invariants for small graphs. Everything here is exhaustive
//! or branch-and-bound, with a hard vertex cap.

use std::collections::HashMap;

use super::{subsets_of_size, Graph, VertexSet};
use crate::error::{cap, Result};

pub const CHROMATIC_CAP: usize = 16;
pub const FVS_CAP: usize = 16;
pub const HITTING_SET_CAP: usize = 16;
pub const MATCHING_CAP: usize = 20;
pub const PERFECT_MATCHING_CAP: usize = 16;

/// Connected components of `G[within]`, each as a vertex set.
pub(crate) fn components_within(g: &Graph, within: VertexSet) -> Vec<VertexSet> {
    let mut left = within.bits();
    let mut out = Vec::new();
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = g.adjacency_bits(v) & within.bits() & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        out.push(VertexSet::from_bits(comp));
    }
    out
}

/// The component of `G[within]` containing `v` (empty if `v` is outside `within`).
pub(crate) fn component_of(g: &Graph, within: VertexSet, v: usize) -> VertexSet {
    if !within.contains(v) {
        return VertexSet::EMPTY;
    }
    let mut comp = 1u64 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = g.adjacency_bits(u) & within.bits() & !comp;
        comp |= fresh;
        frontier |= fresh;
    }
    VertexSet::from_bits(comp)
}

pub(crate) fn connected_within(g: &Graph, within: VertexSet) -> bool {
    components_within(g, within).len() <= 1
}

pub(crate) fn is_acyclic_within(g: &Graph, within: VertexSet) -> bool {
    // a forest has exactly |V| - c edges
    g.edges_within(within) + components_within(g, within).len() == within.len()
}

pub(crate) fn is_bipartite_within(g: &Graph, within: VertexSet) -> bool {
    for comp in components_within(g, within) {
        let start = comp.first().expect("components are nonempty");
        let mut side = [VertexSet::singleton(start), VertexSet::EMPTY];
        let mut frontier = vec![(start, 0usize)];
        while let Some((v, s)) = frontier.pop() {
            let nbrs = g.neighbors(v).intersection(within);
            if !nbrs.is_disjoint(side[s]) {
                return false;
            }
            for u in nbrs.difference(side[1 - s]).iter() {
                side[1 - s].insert(u);
                frontier.push((u, 1 - s));
            }
        }
    }
    true
}

pub fn is_acyclic(g: &Graph) -> bool {
    is_acyclic_within(g, g.vertices())
}

pub fn is_bipartite(g: &Graph) -> bool {
    is_bipartite_within(g, g.vertices())
}

/// The 0-vertex graph counts as connected.
pub fn is_connected(g: &Graph) -> bool {
    connected_within(g, g.vertices())
}

fn max_clique_rec(g: &Graph, clique: usize, mut candidates: u64, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(clique);
        return;
    }
    while candidates != 0 {
        if clique + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        max_clique_rec(g, clique + 1, candidates & g.adjacency_bits(v), best);
    }
}

pub(crate) fn clique_number_within(g: &Graph, within: VertexSet) -> usize {
    let mut best = 0;
    max_clique_rec(g, 0, within.bits(), &mut best);
    best
}

pub fn clique_number(g: &Graph) -> usize {
    clique_number_within(g, g.vertices())
}

fn color_rec(
    g: &Graph,
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // a fresh color is only tried once, which breaks color symmetry
    for c in 0..k.min(used + 1) {
        let clash = g
            .neighbors(v)
            .iter()
            .any(|u| colors[u] == c);
        if !clash {
            colors[v] = c;
            if color_rec(g, order, pos + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

/// A proper coloring of `G[within]` with at most `k` colors, if one exists.
pub(crate) fn coloring_within(g: &Graph, within: VertexSet, k: usize) -> Option<Vec<usize>> {
    let mut order = within.to_vec();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree_within(v, within)));
    let mut colors = vec![usize::MAX; g.n()];
    if order.is_empty() {
        return Some(colors);
    }
    if k == 0 {
        return None;
    }
    color_rec(g, &order, 0, k, 0, &mut colors).then_some(colors)
}

pub(crate) fn colorable_within(g: &Graph, within: VertexSet, k: usize) -> bool {
    if within.len() <= k {
        return true;
    }
    if clique_number_within(g, within) > k {
        return false;
    }
    coloring_within(g, within, k).is_some()
}

/// Exact chromatic number: the clique number is a lower bound, then increasing
/// `k` until a backtracking `k`-coloring exists.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(optimal_coloring(g)?.0)
}

/// The chromatic number together with a witnessing coloring (`colors[v]` in `0..chi`).
pub fn optimal_coloring(g: &Graph) -> Result<(usize, Vec<usize>)> {
    cap("vertex count for chromatic number", g.n(), CHROMATIC_CAP)?;
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let mut k = clique_number(g).max(1);
    loop {
        if let Some(colors) = coloring_within(g, g.vertices(), k) {
            return Ok((k, colors));
        }
        k += 1;
    }
}

/// A smallest vertex set whose removal leaves a forest, found by increasing size.
pub fn min_feedback_vertex_set(g: &Graph) -> Result<VertexSet> {
    cap("vertex count for feedback vertex set", g.n(), FVS_CAP)?;
    let all = g.vertices();
    for size in 0..=g.n() {
        if let Some(s) = subsets_of_size(all, size).find(|&s| is_acyclic_within(g, all.difference(s))) {
            return Ok(s);
        }
    }
    unreachable!("removing every vertex leaves a forest")
}

fn hitting_rec(targets: &[VertexSet], chosen: VertexSet, budget: usize) -> Option<VertexSet> {
    let unhit = targets
        .iter()
        .filter(|t| t.is_disjoint(chosen))
        .min_by_key(|t| t.len());
    let Some(&t) = unhit else {
        return Some(chosen);
    };
    if budget == 0 {
        return None;
    }
    t.iter()
        .find_map(|v| hitting_rec(targets, chosen.with(v), budget - 1))
}

/// A minimum-cardinality set meeting every target. Iterative deepening on the
/// size, branching on the elements of a smallest unhit target.
pub fn min_hitting_set(targets: &[VertexSet], universe_n: usize) -> Result<VertexSet> {
    cap("hitting set universe", universe_n, HITTING_SET_CAP)?;
    for t in targets {
        t.check_within(universe_n)?;
        if t.is_empty() {
            return Err(crate::error::Error::Precondition(
                "an empty target cannot be hit".into(),
            ));
        }
    }
    let mut targets = targets.to_vec();
    targets.sort();
    targets.dedup();
    for budget in 0..=universe_n {
        if let Some(s) = hitting_rec(&targets, VertexSet::EMPTY, budget) {
            return Ok(s);
        }
    }
    unreachable!("the whole universe hits every nonempty target")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSupport {
    /// Most triangles through a single vertex.
    pub d1_max: usize,
    /// Most triangles through a single edge.
    pub d2_max: usize,
    pub triangles: Vec<VertexSet>,
}

pub fn triangle_support(g: &Graph) -> TriangleSupport {
    let mut triangles = Vec::new();
    for (u, v) in g.edges() {
        let common = g.neighbors(u).intersection(g.neighbors(v));
        for w in common.iter().filter(|&w| w > v) {
            triangles.push(VertexSet::from_iter([u, v, w]));
        }
    }
    let d1_max = (0..g.n())
        .map(|v| triangles.iter().filter(|t| t.contains(v)).count())
        .max()
        .unwrap_or(0);
    let d2_max = g
        .edges()
        .map(|(u, v)| g.neighbors(u).intersection(g.neighbors(v)).len())
        .max()
        .unwrap_or(0);
    TriangleSupport {
        d1_max,
        d2_max,
        triangles,
    }
}

pub(crate) fn has_perfect_matching_within(g: &Graph, within: VertexSet) -> bool {
    let Some(v) = within.first() else {
        return true;
    };
    if within.len() % 2 == 1 {
        return false;
    }
    let rest = within.without(v);
    g.neighbors(v)
        .intersection(rest)
        .iter()
        .any(|u| has_perfect_matching_within(g, rest.without(u)))
}

pub fn has_perfect_matching(g: &Graph) -> Result<bool> {
    cap("vertex count for perfect matching", g.n(), PERFECT_MATCHING_CAP)?;
    Ok(has_perfect_matching_within(g, g.vertices()))
}

fn matching_rec(g: &Graph, within: VertexSet, memo: &mut HashMap<u64, Vec<(usize, usize)>>) -> Vec<(usize, usize)> {
    let Some(v) = within.first() else {
        return Vec::new();
    };
    if let Some(m) = memo.get(&within.bits()) {
        return m.clone();
    }
    let rest = within.without(v);
    let mut best = matching_rec(g, rest, memo);
    for u in g.neighbors(v).intersection(rest).iter() {
        let sub = matching_rec(g, rest.without(u), memo);
        if sub.len() + 1 > best.len() {
            best = std::iter::once((v, u)).chain(sub).collect();
        }
    }
    memo.insert(within.bits(), best.clone());
    best
}

/// A maximum matching, as edges `(u, v)` with `u < v`.
pub fn max_matching(g: &Graph) -> Result<Vec<(usize, usize)>> {
    cap("vertex count for maximum matching", g.n(), MATCHING_CAP)?;
    let mut memo = HashMap::new();
    let mut m = matching_rec(g, g.vertices(), &mut memo);
    m.sort();
    Ok(m)
}
