use std::collections::BTreeMap;

use super::iso::canonical_graph;
use super::{write_graph6, Graph};
use crate::error::{cap, Result};

/// Largest `n` for which [`all_graphs`] will enumerate.
pub const MAX_ENUMERATION_N: usize = 7;

/// One canonical representative of every isomorphism class of graphs on `n`
/// vertices, sorted by graph6 string.
///
/// Classes on `n` vertices are grown from the classes on `n - 1` by adding a
/// last vertex with every possible neighborhood, then deduplicated by
/// canonical form. Every graph arises this way from its vertex-deleted subgraph.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    cap("vertex count for exhaustive enumeration", n, MAX_ENUMERATION_N)?;
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let g0 = Graph::empty(0)?;
    level.insert(write_graph6(&g0), g0);
    for size in 1..=n {
        let mut next = BTreeMap::new();
        for base in level.values() {
            for nbrs in 0u64..1 << (size - 1) {
                let mut g = Graph::empty(size)?;
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                for u in 0..size - 1 {
                    if nbrs >> u & 1 == 1 {
                        g.add_edge(u, size - 1)?;
                    }
                }
                let c = canonical_graph(&g)?;
                next.entry(write_graph6(&c)).or_insert(c);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequence() {
        // number of graphs on n unlabeled vertices: 1, 1, 2, 4, 11, 34, 156
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn refuses_large_n() {
        assert!(all_graphs(8).is_err());
    }
}
