use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::graph::{subsets_of_size, VertexSet};

/// Largest member size accepted by the sunflower searches.
pub const SUNFLOWER_SET_CAP: usize = 8;

/// Sets `S_1..S_p` whose pairwise intersections all equal `core`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sunflower {
    pub core: VertexSet,
    pub petals: Vec<VertexSet>,
}

impl Sunflower {
    pub fn p(&self) -> usize {
        self.petals.len()
    }

    /// The petals with the core removed; pairwise disjoint.
    pub fn petal_parts(&self) -> Vec<VertexSet> {
        self.petals.iter().map(|s| s.difference(self.core)).collect()
    }

    pub fn is_valid(&self) -> bool {
        let distinct = self
            .petals
            .iter()
            .enumerate()
            .all(|(i, a)| self.petals[..i].iter().all(|b| a != b));
        distinct
            && self.petals.iter().all(|s| self.core.is_subset(*s))
            && self.petals.iter().enumerate().all(|(i, a)| {
                self.petals[..i]
                    .iter()
                    .all(|b| a.intersection(*b) == self.core)
            })
    }
}

/// `k! (p-1)^k`; a family of `k`-sets larger than this contains a `p`-petal sunflower.
pub fn erdos_rado_threshold(k: usize, p: usize) -> u128 {
    let fact: u128 = (1..=k as u128).product();
    fact * (p.saturating_sub(1) as u128).pow(k as u32)
}

fn check_family(family: &[VertexSet]) -> Result<Vec<VertexSet>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let k = first.len();
    if family.iter().any(|s| s.len() != k) {
        return Err(Error::UnequalSetSizes);
    }
    cap("sunflower set size", k, SUNFLOWER_SET_CAP)?;
    let mut sets = family.to_vec();
    sets.sort();
    sets.dedup();
    Ok(sets)
}

/// A sunflower with exactly `p` petals, if the family has one.
///
/// Runs the Erdős–Rado recursion first (always succeeds above the threshold);
/// when it comes back empty an exhaustive search decides the question.
pub fn find_sunflower(family: &[VertexSet], p: usize) -> Result<Option<Sunflower>> {
    if p == 0 {
        return Err(Error::Precondition("a sunflower needs at least one petal".into()));
    }
    let sets = check_family(family)?;
    if let Some(s) = erdos_rado(&sets, p) {
        return Ok(Some(s));
    }
    Ok(search(&sets, p).filter(|s| s.p() >= p).map(|mut s| {
        s.petals.truncate(p);
        s
    }))
}

/// The Erdős–Rado recursion on its own, without the exhaustive fallback.
pub fn erdos_rado_sunflower(family: &[VertexSet], p: usize) -> Result<Option<Sunflower>> {
    if p == 0 {
        return Err(Error::Precondition("a sunflower needs at least one petal".into()));
    }
    Ok(erdos_rado(&check_family(family)?, p))
}

fn erdos_rado(sets: &[VertexSet], p: usize) -> Option<Sunflower> {
    let mut disjoint: Vec<VertexSet> = Vec::new();
    for &s in sets {
        if disjoint.iter().all(|d| d.is_disjoint(s)) {
            disjoint.push(s);
            if disjoint.len() == p {
                return Some(Sunflower {
                    core: VertexSet::EMPTY,
                    petals: disjoint,
                });
            }
        }
    }
    let union = disjoint.iter().fold(VertexSet::EMPTY, |u, d| u.union(*d));
    // every set meets the union, so some element of it is popular
    let x = union
        .iter()
        .max_by_key(|&x| (sets.iter().filter(|s| s.contains(x)).count(), std::cmp::Reverse(x)))?;
    let link: Vec<VertexSet> = sets
        .iter()
        .filter(|s| s.contains(x))
        .map(|s| s.without(x))
        .collect();
    if link.iter().all(|s| s.is_empty()) {
        return None;
    }
    let inner = erdos_rado(&link, p)?;
    Some(Sunflower {
        core: inner.core.with(x),
        petals: inner.petals.iter().map(|s| s.with(x)).collect(),
    })
}

/// A sunflower with the most petals (ties: first core in size-then-value order).
pub fn max_sunflower(family: &[VertexSet]) -> Result<Option<Sunflower>> {
    let sets = check_family(family)?;
    Ok(search(&sets, usize::MAX))
}

/// Best sunflower over every candidate core, stopping early once `target` petals are found.
fn search(sets: &[VertexSet], target: usize) -> Option<Sunflower> {
    let k = sets.first()?.len();
    let mut cores: Vec<VertexSet> = sets
        .iter()
        .flat_map(|&s| (0..=k).flat_map(move |c| subsets_of_size(s, c)))
        .collect();
    cores.sort_by_key(|c| (c.len(), *c));
    cores.dedup();
    let mut best: Option<Sunflower> = None;
    for core in cores {
        let parts: Vec<VertexSet> = sets
            .iter()
            .filter(|s| core.is_subset(**s))
            .map(|s| s.difference(core))
            .collect();
        let have = best.as_ref().map_or(0, Sunflower::p);
        if parts.len() <= have {
            continue;
        }
        let packing = if core.len() == k {
            // the single set equal to the core
            parts.clone()
        } else {
            max_packing(&parts, target)
        };
        if packing.len() > have {
            best = Some(Sunflower {
                core,
                petals: packing.iter().map(|p| p.union(core)).collect(),
            });
            if packing.len() >= target {
                break;
            }
        }
    }
    best
}

/// Largest pairwise-disjoint subfamily of equal-size nonempty sets, stopping at `target`.
fn max_packing(parts: &[VertexSet], target: usize) -> Vec<VertexSet> {
    let size = parts.first().map_or(1, |s| s.len().max(1));
    let mut best = Vec::new();
    let mut chosen = Vec::new();
    packing_rec(parts, VertexSet::EMPTY, size, target, &mut chosen, &mut best);
    best
}

fn packing_rec(
    candidates: &[VertexSet],
    used: VertexSet,
    size: usize,
    target: usize,
    chosen: &mut Vec<VertexSet>,
    best: &mut Vec<VertexSet>,
) {
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    if best.len() >= target {
        return;
    }
    let free = candidates
        .iter()
        .fold(VertexSet::EMPTY, |u, c| u.union(*c))
        .difference(used);
    let room = candidates.len().min(free.len() / size);
    if chosen.len() + room <= best.len() {
        return;
    }
    let Some((&first, rest)) = candidates.split_first() else {
        return;
    };
    let compatible: Vec<VertexSet> = rest.iter().copied().filter(|c| c.is_disjoint(first)).collect();
    chosen.push(first);
    packing_rec(&compatible, used.union(first), size, target, chosen, best);
    chosen.pop();
    packing_rec(rest, used, size, target, chosen, best);
}
